"""Min-over-orderings of the max prefix deficit for a fixed family of sets.

For a family ``X_1..X_m`` and an ordering ``pi`` the prefix deficit at ``k``
is ``growth(X_pi(1) u ... u X_pi(k)) - k``.  ``growth`` is either the rank
of the union (``Growth.RANK``) or its cardinality (``Growth.UNION``).
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidPermutation, TooManySets
from .gf import FieldSpec
from .linalg import new_basis, subset_ranks, to_internal

DEFAULT_EXACT_CAP = 22
BRUTE_FORCE_CAP = 8


class Growth(enum.Enum):
    RANK = "rank"
    UNION = "union"


@dataclass(frozen=True)
class VectorFamily:
    """``m`` sets of length-``n`` vectors over ``field``, each of size <= ``t``.

    Duplicate sets are allowed.  For set systems over an ``n``-element ground
    set use :meth:`from_index_sets`, which encodes element ``j`` as the unit
    vector ``e_j``.
    """

    n: int
    field: FieldSpec
    sets: tuple[tuple[tuple[int, ...], ...], ...]
    t: int

    def __post_init__(self):
        q = self.field.q
        sets = []
        for s in self.sets:
            if len(s) < 1:
                raise DimensionMismatch("every set needs at least one vector")
            if len(s) > self.t:
                raise DimensionMismatch(f"set of size {len(s)} exceeds t={self.t}")
            vs = []
            for v in s:
                if len(v) != self.n:
                    raise DimensionMismatch(f"vector of length {len(v)} in dimension {self.n}")
                vs.append(tuple(int(x) % q for x in v))
            sets.append(tuple(vs))
        object.__setattr__(self, "sets", tuple(sets))

    @classmethod
    def from_index_sets(cls, n: int, index_sets: Sequence[Sequence[int]], field: FieldSpec,
                        t: int | None = None) -> "VectorFamily":
        sets = []
        for s in index_sets:
            sets.append(tuple(tuple(int(j == e) for j in range(n)) for e in sorted(set(s))))
        if t is None:
            t = max(len(s) for s in sets)
        return cls(n, field, tuple(sets), t)

    @property
    def m(self) -> int:
        return len(self.sets)

    def transformed(self, mat: Sequence[Sequence[int]]) -> "VectorFamily":
        """Apply ``v -> mat @ v`` to every vector."""
        q = self.field.q
        sets = tuple(
            tuple(tuple(sum(r[j] * v[j] for j in range(self.n)) % q for r in mat) for v in s)
            for s in self.sets
        )
        return VectorFamily(len(mat), self.field, sets, self.t)


@dataclass(frozen=True)
class DeficitReport:
    permutation: tuple[int, ...]
    profile: tuple[tuple[int, int, int], ...]  # (k, growth, deficit)
    max_deficit: int
    argmax_k: int


# ---------------------------------------------------------------------------
# incremental growth along an ordering


class _Tracker:
    """Running growth of a growing union of sets."""

    def __init__(self, fam: VectorFamily, mode: Growth):
        self.mode = Growth(mode)
        self.fam = fam
        if self.mode is Growth.RANK:
            self.basis = new_basis(fam.field)
            self.internal = [[to_internal(v, fam.field) for v in s] for s in fam.sets]
        else:
            self.seen: set = set()

    @property
    def value(self) -> int:
        return self.basis.rank if self.mode is Growth.RANK else len(self.seen)

    def add(self, i: int) -> None:
        if self.mode is Growth.RANK:
            for v in self.internal[i]:
                self.basis.insert(v)
        else:
            self.seen.update(self.fam.sets[i])

    def increment(self, i: int) -> int:
        if self.mode is Growth.RANK:
            b = self.basis.copy()
            for v in self.internal[i]:
                b.insert(v)
            return b.rank - self.basis.rank
        return len(set(self.fam.sets[i]) - self.seen)

    def copy(self) -> "_Tracker":
        c = _Tracker.__new__(_Tracker)
        c.mode = self.mode
        c.fam = self.fam
        if self.mode is Growth.RANK:
            c.basis = self.basis.copy()
            c.internal = self.internal
        else:
            c.seen = set(self.seen)
        return c


def _report(pi: Sequence[int], growths: Sequence[int]) -> DeficitReport:
    profile = tuple((k, g, g - k) for k, g in enumerate(growths, start=1))
    best = max(profile, key=lambda row: (row[2], -row[0]))
    return DeficitReport(tuple(pi), profile, best[2], best[0])


def prefix_deficit(fam: VectorFamily, mode: Growth = Growth.RANK,
                   pi: Sequence[int] | None = None) -> DeficitReport:
    """Deficit profile of one ordering (identity when ``pi`` is None)."""
    m = fam.m
    pi = list(range(m)) if pi is None else [int(i) for i in pi]
    if sorted(pi) != list(range(m)):
        raise InvalidPermutation(f"{pi} is not a permutation of range({m})")
    tr = _Tracker(fam, mode)
    growths = []
    for i in pi:
        tr.add(i)
        growths.append(tr.value)
    return _report(pi, growths)


# ---------------------------------------------------------------------------
# exact minimisation


def subset_growth(fam: VectorFamily, mode: Growth = Growth.RANK) -> np.ndarray:
    """Growth of every subfamily, indexed by subset bitmask."""
    mode = Growth(mode)
    if mode is Growth.RANK:
        return subset_ranks(fam.sets, fam.field, fam.n)
    ids: dict = {}
    masks = []
    for s in fam.sets:
        bits = 0
        for v in s:
            bits |= 1 << ids.setdefault(v, len(ids))
        masks.append(bits)
    words = max(1, (len(ids) + 63) // 64)
    unions = np.zeros((1 << fam.m, words), dtype=np.uint64)
    for i, bits in enumerate(masks):
        w = np.array([(bits >> (64 * k)) & 0xFFFFFFFFFFFFFFFF for k in range(words)], dtype=np.uint64)
        half = 1 << i
        unions[half:2 * half] = unions[:half] | w
    return np.bitwise_count(unions).sum(axis=1).astype(np.int16)


def min_deficit_exact(fam: VectorFamily, mode: Growth = Growth.RANK,
                      cap: int = DEFAULT_EXACT_CAP) -> DeficitReport:
    """Optimal ordering by dynamic programming over subsets.

    ``best(S) = max(growth(S) - |S|, min_{i in S} best(S - i))`` with
    ``best(empty) = -inf``; valid because the growth of a prefix depends
    only on the set of its members.
    """
    m = fam.m
    if m > cap:
        raise TooManySets(f"m={m} exceeds the exact cap {cap}; use the greedy strategy")
    full = (1 << m) - 1
    growth = subset_growth(fam, mode).astype(np.int32)
    masks = np.arange(1 << m, dtype=np.int64)
    pop = np.bitwise_count(masks).astype(np.int32)
    value = growth - pop
    neg_inf = np.iinfo(np.int32).min
    best = np.full(1 << m, neg_inf, dtype=np.int32)
    order = np.argsort(pop, kind="stable")
    bounds = np.searchsorted(pop[order], np.arange(m + 2))
    for k in range(1, m + 1):
        layer = order[bounds[k]:bounds[k + 1]]
        sub = np.full(len(layer), np.iinfo(np.int32).max, dtype=np.int32)
        for i in range(m):
            bit = 1 << i
            sel = (layer & bit) != 0
            sub[sel] = np.minimum(sub[sel], best[layer[sel] ^ bit])
        best[layer] = np.maximum(value[layer], sub)
    # walk back from the full set; among optimal last elements take the
    # highest index so that ties leave lower indices in front
    pi = []
    s = full
    while s:
        choice = min(
            (i for i in range(m) if s >> i & 1),
            key=lambda i: (best[s ^ (1 << i)], -i),
        )
        pi.append(choice)
        s ^= 1 << choice
    pi.reverse()
    rep = prefix_deficit(fam, mode, pi)
    assert rep.max_deficit == int(best[full])
    return rep


def min_deficit_bruteforce(fam: VectorFamily, mode: Growth = Growth.RANK) -> DeficitReport:
    """Exhaustive search over all ``m!`` orderings (``m <= 8``).

    Orderings are visited depth first so prefixes share their growth
    computation; no pruning.  Ties keep the lexicographically first ordering.
    """
    m = fam.m
    if m > BRUTE_FORCE_CAP:
        raise TooManySets(f"m={m} exceeds the brute-force cap {BRUTE_FORCE_CAP}")
    best_val = math.inf
    best_pi: list[int] = []

    def dfs(tr, prefix, used, cur_max):
        nonlocal best_val, best_pi
        if len(prefix) == m:
            if cur_max < best_val:
                best_val = cur_max
                best_pi = list(prefix)
            return
        for i in range(m):
            if used >> i & 1:
                continue
            nxt = tr.copy()
            nxt.add(i)
            prefix.append(i)
            dfs(nxt, prefix, used | 1 << i, max(cur_max, nxt.value - len(prefix)))
            prefix.pop()

    dfs(_Tracker(fam, mode), [], 0, -math.inf)
    return prefix_deficit(fam, mode, best_pi)


def all_orders_min(fam: VectorFamily, mode: Growth = Growth.RANK) -> int:
    """Plain ``min`` over ``itertools.permutations``; slow reference value."""
    return min(prefix_deficit(fam, mode, p).max_deficit for p in itertools.permutations(range(fam.m)))


def min_deficit_greedy(fam: VectorFamily, mode: Growth = Growth.RANK) -> DeficitReport:
    """Repeatedly append the unused set with the smallest growth increment."""
    m = fam.m
    tr = _Tracker(fam, mode)
    left = list(range(m))
    pi = []
    growths = []
    while left:
        i = min(left, key=lambda j: (tr.increment(j), j))
        left.remove(i)
        tr.add(i)
        pi.append(i)
        growths.append(tr.value)
    return _report(pi, growths)


def best_report(fam: VectorFamily, mode: Growth = Growth.RANK,
                cap: int = DEFAULT_EXACT_CAP) -> DeficitReport:
    if fam.m <= cap:
        return min_deficit_exact(fam, mode, cap)
    return min_deficit_greedy(fam, mode)


def universal_bound(n: int, t: int) -> int:
    """``n - ceil(n / t)``, the largest possible rank deficit when ``m = n``."""
    return n - -(-n // t)


def upper_bound_check(fam: VectorFamily, cap: int = DEFAULT_EXACT_CAP) -> bool:
    """True when the best available ordering stays within ``n - ceil(n/t)``.

    Uses the exact optimum for ``m <= cap`` and the greedy ordering beyond.
    """
    if fam.m != fam.n:
        raise DimensionMismatch(f"the bound applies to m = n, got m={fam.m}, n={fam.n}")
    return best_report(fam, Growth.RANK, cap).max_deficit <= universal_bound(fam.n, fam.t)
