"""Generators for extremal and random families and MRHS systems."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .deficit import VectorFamily
from .errors import ConstructionStalled, FieldTooSmall, InfeasibleParameters
from .gf import GF2, FieldSpec, smallest_prime_at_least
from .linalg import Mat, new_basis, to_internal, unpack
from .mrhs import MrhsSystem, make_equation, random_rhs
from .rng import make_rng

GV_RATE = 0.2200557288


# ---------------------------------------------------------------------------
# Vandermonde splits


def vandermonde_matrix(rows: int, n: int, q: int) -> list[tuple[int, ...]]:
    """Rows ``(1, a, a^2, ..., a^(n-1))`` for ``a = 0, 1, ..., rows-1`` mod q."""
    return [tuple(pow(a, j, q) for j in range(n)) for a in range(rows)]


def vandermonde_family(n: int, t: int, q: int | None = None) -> VectorFamily:
    """``n`` sets of ``t`` rows of a ``tn x n`` Vandermonde matrix over GF(q).

    Any ``n`` of the ``tn`` rows are independent, so every ordering has the
    largest deficit ``n - ceil(n/t)`` allowed for ``m = n``.  ``q`` defaults
    to the smallest prime ``>= tn``.
    """
    if q is None:
        q = smallest_prime_at_least(max(2, t * n))
    if q < t * n:
        raise FieldTooSmall(f"need q >= tn = {t * n} distinct evaluation points, got q={q}")
    rows = vandermonde_matrix(t * n, n, q)
    sets = tuple(tuple(rows[i * t:(i + 1) * t]) for i in range(n))
    return VectorFamily(n, FieldSpec(q), sets, t)


# ---------------------------------------------------------------------------
# Gilbert-Varshamov pair families


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def gv_sum(N: int, d: int) -> int:
    """``sum_{i=1}^{d-2} C(N-1, i)``."""
    return sum(math.comb(N - 1, i) for i in range(1, d - 1))


def gv_feasible(n: int, d: int) -> bool:
    return gv_sum(2 * n, d) < 2 ** n


@dataclass(frozen=True)
class GvCheck:
    c: float
    d: int
    feasible: bool
    entropy_exponent: float  # (N-1) * H2((d-2)/(N-1))
    entropy_says_feasible: bool


def gv_rate_check(n: int, c: float = GV_RATE) -> GvCheck:
    """Target distance ``ceil(c n)`` and whether ``2n`` GV rows fit in GF(2)^n.

    The entropy bound ``sum_{k <= lam N'} C(N', k) <= 2^(N' H2(lam))`` is
    only a sufficient test; the decision is the exact binomial sum.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    d = math.ceil(c * n)
    N1 = 2 * n - 1
    lam = max(d - 2, 0) / N1
    exponent = N1 * binary_entropy(lam) if lam < 0.5 else math.inf
    quick = exponent <= n
    feasible = True if quick else gv_feasible(n, d)
    return GvCheck(c, d, feasible, exponent, quick)


@dataclass(frozen=True)
class GvWitness:
    """``N x n`` GF(2) matrix whose first ``r`` columns are the greedy part.

    ``verified_up_to`` is the largest subset size checked exhaustively (0
    when unchecked).
    """

    p_matrix: Mat
    d: int
    r: int
    verified_up_to: int = 0


def gv_columns(N: int, d: int) -> int:
    """Fewest columns guaranteeing the greedy row search cannot stall.

    Before row ``N`` at most ``sum_{i=0}^{d-2} C(N-1, i)`` vectors are
    forbidden, so ``r`` with that count ``< 2^r`` always leaves a candidate.
    """
    forbidden = 1 + gv_sum(N, d)
    r = 1
    while 2 ** r <= forbidden:
        r += 1
    return r


def greedy_gv_rows(N: int, r: int, d: int, rng) -> list[int]:
    """``N`` packed rows of GF(2)^r, no ``d-1`` of them dependent.

    Each new row avoids every sum of at most ``d-2`` earlier rows; candidates
    are tried in a seeded random order.
    """
    layers: list[set[int]] = [{0}] + [set() for _ in range(max(d - 2, 0))]
    forbidden = {0}
    rows: list[int] = []
    for _ in range(N):
        cands = rng.permutation(1 << r)
        row = next((int(c) for c in cands if int(c) not in forbidden), None)
        if row is None:
            raise ConstructionStalled(f"no admissible row after {len(rows)} rows; retry with a new seed")
        for j in range(len(layers) - 1, 0, -1):
            new = {x ^ row for x in layers[j - 1]}
            layers[j] |= new
            forbidden |= new
        rows.append(row)
    return rows


def smallest_dependent_subset(rows: list[int], up_to: int) -> tuple[int, ...] | None:
    """First nonempty subset of at most ``up_to`` packed rows summing to zero."""
    for size in range(1, up_to + 1):
        for idx in itertools.combinations(range(len(rows)), size):
            acc = 0
            for i in idx:
                acc ^= rows[i]
            if acc == 0:
                return idx
    return None


def verify_gv_witness(w: GvWitness, up_to: int | None = None) -> GvWitness:
    """Exhaustively check that no ``up_to`` (default ``d-1``) rows are dependent.

    Returns a copy with ``verified_up_to`` set; raises
    :class:`ConstructionStalled` naming the offending rows otherwise.
    """
    up_to = w.d - 1 if up_to is None else up_to
    bad = smallest_dependent_subset(list(w.p_matrix.packed), up_to)
    if bad is not None:
        raise ConstructionStalled(f"rows {bad} are linearly dependent")
    return GvWitness(w.p_matrix, w.d, w.r, up_to)


def gv_pair_family(n: int, d: int, seed, verify: bool = True) -> tuple[GvWitness, VectorFamily]:
    """``2n`` rows of GF(2)^n, any ``d-1`` independent, split into ``n`` pairs.

    The first ``r`` columns come from the greedy search, the remaining
    ``n - r`` are random padding; any ``floor((d-1)/2)`` pairs then span
    ``2 floor((d-1)/2)`` dimensions.
    """
    N = 2 * n
    if not gv_feasible(n, d):
        raise InfeasibleParameters(
            f"sum_(i=1)^(d-2) C({N - 1}, i) = {gv_sum(N, d)} is not below 2^{n}")
    rng = make_rng(seed)
    r = min(n, gv_columns(N, d))
    core = greedy_gv_rows(N, r, d, rng)
    pad = [0] * N
    if n > r:
        bits = rng.integers(0, 2, size=(N, n - r))
        pad = [sum(int(b) << (r + j) for j, b in enumerate(row)) for row in bits]
    rows = [c | p for c, p in zip(core, pad)]
    w = GvWitness(Mat.from_packed(rows, n), d, r)
    if verify:
        w = verify_gv_witness(w)
    vecs = [unpack(x, n) for x in rows]
    fam = VectorFamily(n, GF2, tuple((vecs[2 * i], vecs[2 * i + 1]) for i in range(n)), 2)
    return w, fam


# ---------------------------------------------------------------------------
# unit + weight-2 family


@dataclass(frozen=True)
class Thm10Family:
    """``3n`` sets over GF(2)^(3n): set ``3i + j`` is ``{a_i, b_i + c_x}``
    with ``x = i, sigma(i), tau(i)`` for ``j = 0, 1, 2`` (0-based).

    Coordinates ``0..n-1`` are ``a``, ``n..2n-1`` are ``b``, ``2n..3n-1``
    are ``c``.
    """

    n: int
    sigma: tuple[int, ...]
    tau: tuple[int, ...]
    family: VectorFamily

    def c_index(self, set_index: int) -> int:
        i, j = divmod(set_index, 3)
        return (i, self.sigma[i], self.tau[i])[j]


def unit_weight2_family(n: int, sigma, tau) -> Thm10Family:
    sigma = tuple(int(x) for x in sigma)
    tau = tuple(int(x) for x in tau)
    dim = 3 * n

    def vec(*ones):
        return tuple(int(k in ones) for k in range(dim))

    sets = []
    for i in range(n):
        for c in (i, sigma[i], tau[i]):
            sets.append((vec(i), vec(n + i, 2 * n + c)))
    return Thm10Family(n, sigma, tau, VectorFamily(dim, GF2, tuple(sets), 2))


def theorem10_family(n: int, seed) -> Thm10Family:
    """Family of unit-vector / weight-2 pairs built from two uniform random
    permutations ``sigma`` and ``tau`` of ``range(n)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = make_rng(seed)
    sigma = rng.permutation(n)
    tau = rng.permutation(n)
    return unit_weight2_family(n, sigma, tau)


# ---------------------------------------------------------------------------
# random instances


def random_family(n: int, m: int, t: int, q: int, seed) -> VectorFamily:
    """``m`` sets of ``t`` uniform nonzero vectors (duplicates inside a set
    collapse, so sets may be smaller)."""
    rng = make_rng(seed)
    f = FieldSpec(q)
    sets = []
    for _ in range(m):
        s = []
        for _ in range(t):
            while True:
                v = tuple(int(x) for x in rng.integers(0, q, size=n))
                if any(v):
                    break
            if v not in s:
                s.append(v)
        sets.append(tuple(s))
    return VectorFamily(n, f, tuple(sets), t)


def independent_subset(vectors, field: FieldSpec) -> list:
    """Greedy maximal independent sub-list, original order kept."""
    b = new_basis(field)
    return [v for v in vectors if b.insert(to_internal(v, field))]


def family_to_system(fam: VectorFamily, seed) -> tuple[MrhsSystem, list[int]]:
    """MRHS system with ``A_i`` = independent vectors of ``X_i`` as rows.

    Right-hand sides follow the random-map model.  Returns the system and
    the list of indices whose ``t_i`` shrank because ``X_i`` was dependent.
    """
    rng = make_rng(seed)
    eqs = []
    reduced = []
    for i, s in enumerate(fam.sets):
        rows = independent_subset(s, fam.field)
        if len(rows) < len(s):
            reduced.append(i)
        a = Mat(rows, fam.field, fam.n)
        eqs.append(make_equation(a, random_rhs(a, rng)))
    return MrhsSystem(fam.n, fam.field, tuple(eqs)), reduced


def random_system(n: int, m: int, t: int, q: int, seed, t_min: int = 1) -> MrhsSystem:
    """``m`` equations with ``t_i`` uniform in ``[t_min, t]`` and uniform
    full-rank matrices."""
    rng = make_rng(seed)
    f = FieldSpec(q)
    eqs = []
    for _ in range(m):
        ti = int(rng.integers(t_min, t + 1))
        while True:
            rows = [tuple(int(x) for x in rng.integers(0, q, size=n)) for _ in range(ti)]
            if len(independent_subset(rows, f)) == ti:
                break
        a = Mat(rows, f, n)
        eqs.append(make_equation(a, random_rhs(a, rng)))
    return MrhsSystem(n, f, tuple(eqs))
