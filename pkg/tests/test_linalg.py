import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_rank
from mrhsglue.constructions import vandermonde_matrix
from mrhsglue.errors import DimensionMismatch, Inconsistent, RankDeficient
from mrhsglue.gf import GF2, FieldSpec
from mrhsglue.linalg import (
    Mat, echelonize, mat_rank, pack, rank, solve_point, stack_reduce, subset_ranks, unpack,
)


@st.composite
def matrices(draw, qs=(2, 3, 5, 7), max_rows=6, max_cols=7):
    q = draw(st.sampled_from(qs))
    n = draw(st.integers(1, max_cols))
    k = draw(st.integers(0, max_rows))
    rows = [tuple(draw(st.integers(0, q - 1)) for _ in range(n)) for _ in range(k)]
    return q, n, rows


def test_rank_examples():
    assert rank([], GF2) == 0
    for q in (2, 5):
        eye = [tuple(int(i == j) for j in range(5)) for i in range(5)]
        assert rank(eye, FieldSpec(q)) == 5
    rows = vandermonde_matrix(12, 4, 13)
    rng = np.random.default_rng(0)
    for _ in range(20):
        pick = rng.choice(12, 4, replace=False)
        assert rank([rows[i] for i in pick], FieldSpec(13)) == 4


def test_rank_length_mismatch():
    with pytest.raises(DimensionMismatch):
        rank([(1, 0), (1, 0, 1)], GF2)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_naive(m):
    q, n, rows = m
    assert rank(rows, FieldSpec(q)) == naive_rank(rows, q)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_rank_monotone_and_bounded(m, data):
    q, n, rows = m
    f = FieldSpec(q)
    extra = tuple(data.draw(st.integers(0, q - 1)) for _ in range(n))
    r = rank(rows, f)
    r2 = rank(rows + [extra], f)
    assert r <= r2 <= r + 1
    assert r <= min(len(rows), n)


def test_echelonize_examples():
    e = echelonize(Mat.zeros(3, 4, GF2))
    assert e.rank == 0 and e.basis.nrows == 0
    eye = Mat.identity(4, FieldSpec(5))
    assert echelonize(eye).basis == eye
    e = echelonize(Mat([(1, 1, 0), (0, 1, 1), (1, 0, 1)], GF2))
    assert e.rank == 2


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=5))
def test_echelonize_reconstruct_and_idempotent(m):
    q, n, rows = m
    f = FieldSpec(q)
    a = Mat(rows, f, n)
    e = echelonize(a)
    assert e.reconstruct() == a
    again = echelonize(e.basis)
    assert again.basis == e.basis
    assert e.rank == naive_rank(rows, q)


def test_packed_and_generic_agree(rng):
    for _ in range(50):
        n = int(rng.integers(1, 70))
        rows = [tuple(int(x) for x in rng.integers(0, 2, n)) for _ in range(int(rng.integers(0, 8)))]
        assert rank(rows, GF2) == naive_rank(rows, 2)
        for r in rows:
            assert unpack(pack(r), n) == r


def test_stack_reduce_examples():
    a1 = Mat([(1, 0), (0, 1)], GF2)
    res = stack_reduce(a1, Mat([(1, 1)], GF2))
    assert res.a == a1 and res.kept == () and res.dependency == ((1, 1),)

    res = stack_reduce(a1, Mat([(1, 0), (0, 1)], GF2))
    assert res.a == a1 and all(d is not None for d in res.dependency)

    f = FieldSpec(3)
    u = Mat([(1, 0, 0, 0), (0, 1, 0, 0)], f)
    v = Mat([(0, 0, 1, 0), (0, 0, 0, 1)], f)
    res = stack_reduce(u, v)
    assert res.a == u.vstack(v) and res.dependency == (None, None)


def test_stack_reduce_needs_full_rank_left():
    with pytest.raises(RankDeficient):
        stack_reduce(Mat([(1, 1), (1, 1)], GF2), Mat([(1, 0)], GF2))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(2, 6), st.data())
def test_stack_reduce_dependencies_hold(q, n, data):
    f = FieldSpec(q)
    rows = lambda k: [tuple(data.draw(st.integers(0, q - 1)) for _ in range(n)) for _ in range(k)]
    a1 = rows(data.draw(st.integers(1, n)))
    if naive_rank(a1, q) < len(a1):
        return
    a2 = rows(data.draw(st.integers(0, 4)))
    res = stack_reduce(Mat(a1, f, n), Mat(a2, f, n))
    assert res.a.rows[:len(a1)] == tuple(a1)
    assert res.rank == naive_rank(a1 + a2, q)
    for j, dep in enumerate(res.dependency):
        if dep is None:
            continue
        combo = [sum(c * r[k] for c, r in zip(dep, res.a.rows)) % q for k in range(n)]
        assert tuple(combo) == a2[j]


def test_solve_point_examples():
    f = FieldSpec(7)
    x, ker = solve_point(Mat.identity(3, f), (4, 5, 6))
    assert x == (4, 5, 6) and ker == ()
    x, ker = solve_point(Mat([(1, 1)], GF2), (1,))
    assert x == (1, 0) and ker == ((1, 1),)
    f = FieldSpec(11)
    a = Mat(vandermonde_matrix(4, 4, 11), f)
    x, ker = solve_point(a, (3, 1, 4, 1))
    assert ker == () and a.apply(x) == (3, 1, 4, 1)


def test_solve_point_errors():
    with pytest.raises(Inconsistent):
        solve_point(Mat([(1, 1), (1, 1)], GF2), (0, 1))
    with pytest.raises(DimensionMismatch):
        solve_point(Mat([(1, 1)], GF2), (0, 1))


@settings(max_examples=100, deadline=None)
@given(matrices(qs=(2, 3, 5), max_rows=4, max_cols=5), st.data())
def test_solve_point_kernel(m, data):
    q, n, rows = m
    if not rows:
        return
    f = FieldSpec(q)
    a = Mat(rows, f, n)
    x = tuple(data.draw(st.integers(0, q - 1)) for _ in range(n))
    b = a.apply(x)
    x0, ker = solve_point(a, b)
    assert a.apply(x0) == b
    assert len(ker) == n - naive_rank(rows, q)
    for k in ker:
        assert not any(a.apply(k))


def test_subset_ranks_match_scalar(rng):
    for q in (2, 3, 5):
        f = FieldSpec(q)
        for _ in range(5):
            n = int(rng.integers(2, 8))
            sets = [[tuple(int(x) for x in rng.integers(0, q, n)) for _ in range(int(rng.integers(1, 4)))]
                    for _ in range(int(rng.integers(1, 7)))]
            out = subset_ranks(sets, f, n, chunk=16)
            for mask in range(1 << len(sets)):
                vecs = [v for i, s in enumerate(sets) if mask >> i & 1 for v in s]
                assert out[mask] == naive_rank(vecs, q)


def test_mat_rank_and_numpy():
    m = Mat([(1, 2), (2, 4)], FieldSpec(5))
    assert mat_rank(m) == 1
    assert m.to_numpy().tolist() == [[1, 2], [2, 4]]
