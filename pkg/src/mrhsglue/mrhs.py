"""MRHS equations ``A X in S``, gluing, and the sequential solver."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    EnumerationTooLarge,
    InvalidPermutation,
    ModelTooLarge,
    RankDeficient,
)
from .gf import FieldSpec
from .linalg import Mat, mat_rank, new_basis, solve_point, stack_reduce
from .rng import make_rng

DEFAULT_ENUM_CAP = 1 << 16
DEFAULT_MODEL_CAP = 1 << 20


@dataclass(frozen=True)
class MrhsEquation:
    """A full-row-rank ``t x n`` matrix with a sorted set of right-hand sides.

    Build through :func:`make_equation`, which validates and canonicalises.
    """

    a: Mat
    s: tuple[tuple[int, ...], ...]

    @property
    def t(self) -> int:
        return self.a.nrows

    @property
    def n(self) -> int:
        return self.a.ncols

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    def satisfied_by(self, x: Sequence[int]) -> bool:
        return self.a.apply(x) in set(self.s)


def make_equation(a: Mat, s: Iterable[Sequence[int]]) -> MrhsEquation:
    t = a.nrows
    if mat_rank(a) < t:
        raise RankDeficient(f"matrix of {t} rows has rank {mat_rank(a)}")
    q = a.field.q
    rhs = set()
    for b in s:
        if len(b) != t:
            raise DimensionMismatch(f"right-hand side of length {len(b)} for {t} rows")
        rhs.add(tuple(int(x) % q for x in b))
    return MrhsEquation(a, tuple(sorted(rhs)))


@dataclass(frozen=True)
class MrhsSystem:
    n: int
    field: FieldSpec
    equations: tuple[MrhsEquation, ...]

    def __post_init__(self):
        if not self.equations:
            raise DimensionMismatch("a system needs at least one equation")
        for e in self.equations:
            if e.n != self.n or e.field != self.field:
                raise DimensionMismatch("equations disagree on n or field")

    @property
    def m(self) -> int:
        return len(self.equations)


# ---------------------------------------------------------------------------
# gluing


def _dot(c: Sequence[int], b: Sequence[int], q: int) -> int:
    return sum(x * y for x, y in zip(c, b)) % q


def glue(e1: MrhsEquation, e2: MrhsEquation) -> MrhsEquation:
    """Equation whose solutions are the common solutions of ``e1`` and ``e2``.

    Right-hand sides are matched with a hash join on the coordinates forced
    by the dependent rows of ``e2``, so the work is linear in
    ``|S1| + |S2| + |S_out|``.
    """
    if e1.n != e2.n or e1.field != e2.field:
        raise DimensionMismatch("equations disagree on n or field")
    sr = stack_reduce(e1.a, e2.a)
    return MrhsEquation(sr.a, _join(sr, e1.s, e2.s, e1.field.q))


def _join(sr, s1, s2, q):
    t1 = sr.n_left
    kept = sr.kept
    deps = [(j, c) for j, c in enumerate(sr.dependency) if c is not None]
    if not s1 or not s2:
        return ()
    left = [(c[:t1], c[t1:], j) for j, c in deps]
    index: dict = {}
    for b2 in s2:
        tail = tuple(b2[k] for k in kept)
        key = tuple((b2[j] - _dot(ck, tail, q)) % q for _, ck, j in left)
        index.setdefault(key, []).append(tail)
    out = []
    for b1 in s1:
        key = tuple(_dot(c1, b1, q) for c1, _, _ in left)
        for tail in index.get(key, ()):
            out.append(b1 + tail)
    out.sort()
    return tuple(out)


@dataclass(frozen=True)
class GlueStep:
    """One application of gluing; ``k`` counts equations absorbed so far."""

    k: int
    rank: int
    s_left: int
    s_right: int
    s_out: int
    skipped: bool = False

    @property
    def cost(self) -> int:
        if self.skipped:
            return 0
        return self.s_left + self.s_right + self.s_out


@dataclass
class CostTrace:
    steps: list[GlueStep] = dc_field(default_factory=list)
    initial_rank: int = 0
    initial_size: int = 0

    @property
    def total(self) -> int:
        return sum(s.cost for s in self.steps)

    @property
    def ranks(self) -> list[int]:
        return [self.initial_rank] + [s.rank for s in self.steps]

    @property
    def sizes(self) -> list[int]:
        return [self.initial_size] + [s.s_out for s in self.steps]


def check_order(order: Sequence[int], m: int) -> list[int]:
    order = [int(i) for i in order]
    if sorted(order) != list(range(m)):
        raise InvalidPermutation(f"{order} is not a permutation of range({m})")
    return order


def solve_system(sys: MrhsSystem, order: Sequence[int] | None = None) -> tuple[MrhsEquation, CostTrace]:
    """Left fold of :func:`glue` along ``order`` (identity by default).

    Once the running right-hand side set is empty the remaining matrices are
    still stacked (so ranks stay meaningful) but the joins are skipped and
    cost nothing.
    """
    order = check_order(range(sys.m) if order is None else order, sys.m)
    eqs = sys.equations
    cur = eqs[order[0]]
    trace = CostTrace(initial_rank=cur.t, initial_size=len(cur.s))
    for k, idx in enumerate(order[1:], start=2):
        nxt = eqs[idx]
        if not cur.s:
            sr = stack_reduce(cur.a, nxt.a)
            cur = MrhsEquation(sr.a, ())
            trace.steps.append(GlueStep(k, sr.rank, 0, len(nxt.s), 0, skipped=True))
            continue
        s_left = len(cur.s)
        cur = glue(cur, nxt)
        trace.steps.append(GlueStep(k, cur.t, s_left, len(nxt.s), len(cur.s)))
    return cur, trace


def extract_solutions(e: MrhsEquation, cap: int = DEFAULT_ENUM_CAP) -> list[tuple[int, ...]]:
    """All ``X`` with ``A X in S``, as a sorted list.

    Raises :class:`EnumerationTooLarge` when a single coset holds more than
    ``cap`` points.
    """
    q = e.field.q
    free = e.n - e.t
    if q ** free > cap:
        raise EnumerationTooLarge(f"{q}^{free} points per right-hand side exceed cap {cap}")
    out = []
    for b in e.s:
        x0, kernel = solve_point(e.a, b)
        for coeffs in itertools.product(range(q), repeat=len(kernel)):
            x = list(x0)
            for c, k in zip(coeffs, kernel):
                if c:
                    for j in range(e.n):
                        x[j] = (x[j] + c * k[j]) % q
            out.append(tuple(x))
    out.sort()
    return out


def brute_force_solutions(sys: MrhsSystem, cap: int = 1 << 20) -> list[tuple[int, ...]]:
    """Enumerate all of GF(q)^n and keep the points satisfying every equation."""
    q = sys.field.q
    if q ** sys.n > cap:
        raise EnumerationTooLarge(f"{q}^{sys.n} exceeds cap {cap}")
    checks = [(e.a, set(e.s)) for e in sys.equations]
    return [
        x for x in itertools.product(range(q), repeat=sys.n)
        if all(a.apply(x) in s for a, s in checks)
    ]


# ---------------------------------------------------------------------------
# random right-hand sides


def all_vectors(t: int, q: int) -> np.ndarray:
    """Every vector of GF(q)^t in lexicographic order, shape ``(q**t, t)``."""
    idx = np.arange(q ** t, dtype=np.int64)
    pows = q ** np.arange(t - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // pows[None, :]) % q


def random_rhs(a: Mat, seed, p: float | None = None, cap: int = DEFAULT_MODEL_CAP) -> list[tuple[int, ...]]:
    """Right-hand sides drawn as the zero set of a uniformly random map.

    Each vector of GF(q)^t is included independently with probability
    ``p`` (default ``1/q``), which is exactly the zero set of a random map
    GF(q)^t -> GF(q).
    """
    q = a.field.q
    t = a.nrows
    if q ** t > cap:
        raise ModelTooLarge(f"{q}^{t} candidate right-hand sides exceed cap {cap}")
    rng = make_rng(seed)
    if p is None:
        p = 1.0 / q
    hit = rng.random(q ** t) < p
    vecs = all_vectors(t, q)[hit]
    return [tuple(int(x) for x in v) for v in vecs]


# ---------------------------------------------------------------------------
# cost model


def rank_profile(sys: MrhsSystem, order: Sequence[int] | None = None) -> list[int]:
    """``r_k``: rank of all rows of the first ``k`` matrices along ``order``."""
    order = check_order(range(sys.m) if order is None else order, sys.m)
    b = new_basis(sys.field)
    out = []
    for i in order:
        for v in sys.equations[i].a.internal_rows():
            b.insert(v)
        out.append(b.rank)
    return out


def predicted_sizes(sys: MrhsSystem, order: Sequence[int] | None = None) -> list[float]:
    """Expected ``|S|`` after absorbing ``k`` equations: ``q**(r_k - k)``."""
    q = sys.field.q
    return [float(q) ** (r - k) for k, r in enumerate(rank_profile(sys, order), start=1)]


def predicted_cost_bound(sys: MrhsSystem, order: Sequence[int] | None = None) -> float:
    """``m * max_k q**(r_k - k)``."""
    return sys.m * max(predicted_sizes(sys, order))


def max_rank_excess(sys: MrhsSystem, order: Sequence[int] | None = None) -> int:
    return max(r - k for k, r in enumerate(rank_profile(sys, order), start=1))


def expected_cost(sys: MrhsSystem, order: Sequence[int] | None = None) -> float:
    """Mean of :attr:`CostTrace.total` under the random-map model, ignoring
    the empty-set short circuit."""
    order = check_order(range(sys.m) if order is None else order, sys.m)
    q = sys.field.q
    sizes = predicted_sizes(sys, order)
    total = 0.0
    for k in range(1, sys.m):
        t_k = sys.equations[order[k]].t
        total += sizes[k - 1] + float(q) ** (t_k - 1) + sizes[k]
    return total

