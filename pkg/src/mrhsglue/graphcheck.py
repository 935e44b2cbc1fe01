"""Graph view of the unit / weight-2 family.

Set ``3i + j`` contributes the unit vector ``a_i`` and the edge ``b_i c_x``
of a bipartite multigraph on ``B u C``.  The rank of any subfamily is the
number of distinct ``a_i`` plus ``|V| - comp`` of its edge subgraph, since
a set of vectors ``b + c`` is independent exactly when its edges form a
forest.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .constructions import Thm10Family
from .errors import InvalidPermutation, InvalidPrefix
from .rng import make_rng

LABELS = ("0", "sigma", "tau")


@dataclass(frozen=True)
class BipartiteMultigraph:
    """Edges ``(b, c, label)`` with ``b``, ``c`` in ``range(n)``; parallel
    edges are kept."""

    n: int
    edges: tuple[tuple[int, int, str], ...]

    def edge_multiplicity(self) -> Counter:
        return Counter((b, c) for b, c, _ in self.edges)


def _check_perm(p, n):
    if sorted(int(x) for x in p) != list(range(n)):
        raise InvalidPermutation(f"{list(p)} is not a permutation of range({n})")


def build_h(sigma: Sequence[int], tau: Sequence[int], n: int) -> BipartiteMultigraph:
    _check_perm(sigma, n)
    _check_perm(tau, n)
    edges = []
    for lab, perm in zip(LABELS, (range(n), sigma, tau)):
        edges.extend((i, int(perm[i]), lab) for i in range(n))
    return BipartiteMultigraph(n, tuple(edges))


def family_graph(fam: Thm10Family) -> BipartiteMultigraph:
    return build_h(fam.sigma, fam.tau, fam.n)


class _DSU:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True

    @property
    def components(self) -> int:
        return len({self.find(x) for x in self.parent})


def _prefix_edges(fam: Thm10Family, prefix: Sequence[int]) -> list[tuple[int, int]]:
    m = 3 * fam.n
    seen = set()
    for i in prefix:
        if not 0 <= i < m:
            raise InvalidPrefix(f"set index {i} outside range({m})")
        if i in seen:
            raise InvalidPrefix(f"set index {i} repeated")
        seen.add(i)
    return [(i // 3, fam.c_index(i)) for i in prefix]


@dataclass(frozen=True)
class PrefixGraphStats:
    k: int
    k1: int
    k2: int
    k3: int
    components: int
    vertices: int
    units: int

    @property
    def rank(self) -> int:
        return self.units + self.vertices - self.components


def prefix_graph_stats(fam: Thm10Family, prefix: Sequence[int]) -> PrefixGraphStats:
    edges = _prefix_edges(fam, prefix)
    deg = Counter(b for b, _ in edges)
    dsu = _DSU()
    for b, c in edges:
        dsu.union(("b", b), ("c", c))
    return PrefixGraphStats(
        k=len(edges),
        k1=sum(1 for d in deg.values() if d == 1),
        k2=sum(1 for d in deg.values() if d == 2),
        k3=sum(1 for d in deg.values() if d == 3),
        components=dsu.components,
        vertices=len(dsu.parent),
        units=len(deg),
    )


def prefix_rank_via_graph(fam: Thm10Family, prefix: Sequence[int]) -> int:
    """Rank of the union of the listed sets, read off the prefix graph.

    Parallel edges add nothing: they repeat the same vector ``b + c``.
    """
    return prefix_graph_stats(fam, prefix).rank


def count_short_cycles(h: BipartiteMultigraph, l_max: int) -> dict[int, int]:
    """Number of cycles of length ``2l`` for ``l = 1..l_max``.

    Length 2 counts pairs of parallel edges.  Longer cycles are counted on
    the underlying simple graph, each vertex cycle once.
    """
    if l_max > 8:
        raise ValueError("l_max must be <= 8")
    counts = {l: 0 for l in range(1, l_max + 1)}
    if l_max < 1:
        return counts
    n = h.n
    mult = h.edge_multiplicity()
    counts[1] = sum(k * (k - 1) // 2 for k in mult.values())
    adj: list[set[int]] = [set() for _ in range(2 * n)]
    for b, c in mult:
        adj[b].add(n + c)
        adj[n + c].add(b)
    nbrs = [sorted(a) for a in adj]
    max_len = 2 * l_max

    walks = Counter()

    # each cycle is rooted at its smallest vertex and found once per direction
    def walk(start, v, depth, on_path):
        for w in nbrs[v]:
            if w == start:
                if depth >= 4:
                    walks[depth // 2] += 1
            elif w > start and w not in on_path and depth < max_len:
                on_path.add(w)
                walk(start, w, depth + 1, on_path)
                on_path.discard(w)

    for s in range(2 * n):
        walk(s, s, 1, {s})
    for l in range(2, l_max + 1):
        counts[l] = walks[l] // 2
    return counts


def cycle_survey(n: int, trials: int, l_max: int, seed) -> dict[int, float]:
    """Mean short-cycle counts of ``H`` over random ``(sigma, tau)``."""
    rng = make_rng(seed)
    totals = np.zeros(l_max + 1)
    for _ in range(trials):
        sigma = rng.permutation(n)
        tau = rng.permutation(n)
        for l, c in count_short_cycles(build_h(sigma, tau, n), l_max).items():
            totals[l] += c
    return {l: float(totals[l] / trials) for l in range(1, l_max + 1)}


def random_prefix(fam: Thm10Family, rng) -> list[int]:
    rng = make_rng(rng)
    m = 3 * fam.n
    order = rng.permutation(m)
    k = int(rng.integers(1, m + 1))
    return [int(x) for x in order[:k]]
