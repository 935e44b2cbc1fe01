import itertools

import networkx as nx
import numpy as np
import pytest

from conftest import naive_rank
from mrhsglue.constructions import theorem10_family, unit_weight2_family
from mrhsglue.errors import InvalidPermutation, InvalidPrefix
from mrhsglue.graphcheck import (
    BipartiteMultigraph, build_h, count_short_cycles, cycle_survey, prefix_graph_stats,
    prefix_rank_via_graph, random_prefix,
)


def nx_cycle_counts(h, l_max):
    """Oracle: parallel pairs for length 2, networkx on the simple graph above."""
    mult = h.edge_multiplicity()
    out = {1: sum(k * (k - 1) // 2 for k in mult.values())}
    g = nx.Graph()
    g.add_edges_from((("b", b), ("c", c)) for b, c in mult)
    lengths = [len(c) for c in nx.simple_cycles(g, length_bound=2 * l_max)]
    for l in range(2, l_max + 1):
        out[l] = sum(1 for x in lengths if x == 2 * l)
    return out


def test_build_h_examples():
    h = build_h([0, 1, 2], [0, 1, 2], 3)
    assert all(k == 3 for k in h.edge_multiplicity().values())
    assert len(h.edge_multiplicity()) == 3
    h = build_h([1, 0], [0, 1], 2)
    assert count_short_cycles(h, 2) == {1: 2, 2: 1}
    with pytest.raises(InvalidPermutation):
        build_h([0, 0], [0, 1], 2)


def test_identity_counts():
    for n in range(1, 5):
        h = build_h(range(n), range(n), n)
        assert count_short_cycles(h, 4) == {1: 3 * n, 2: 0, 3: 0, 4: 0}
    assert count_short_cycles(BipartiteMultigraph(3, ()), 3) == {1: 0, 2: 0, 3: 0}


def test_cycle_counts_match_networkx(rng):
    for _ in range(40):
        n = int(rng.integers(2, 8))
        h = build_h(rng.permutation(n), rng.permutation(n), n)
        assert count_short_cycles(h, 5) == nx_cycle_counts(h, 5)


def test_mean_two_cycles():
    # each of the three pairs of matchings shares an edge at i with probability 1/n
    mean = cycle_survey(10, 3000, 2, seed=4)
    assert abs(mean[1] - 3.0) < 0.2


def test_prefix_rank_examples():
    fam = theorem10_family(4, 1)
    assert prefix_rank_via_graph(fam, [5]) == 2
    ident = unit_weight2_family(3, range(3), range(3))
    assert prefix_rank_via_graph(ident, list(range(9))) == 6
    with pytest.raises(InvalidPrefix):
        prefix_rank_via_graph(fam, [0, 0])
    with pytest.raises(InvalidPrefix):
        prefix_rank_via_graph(fam, [12])


def test_cycle_prefix_rank_drop():
    # sets 0,1 of i=0 and 3,4 of i=1 trace the 4-cycle b0 c0 b1 c1
    fam = unit_weight2_family(2, (1, 0), (0, 1))
    prefix = [0, 1, 3]
    assert prefix_rank_via_graph(fam, prefix) == 2 + 3
    assert prefix_rank_via_graph(fam, prefix + [4]) == 2 + 3
    vecs = [v for i in prefix + [4] for v in fam.family.sets[i]]
    assert naive_rank(vecs, 2) == 5


def test_graph_rank_matches_elimination(rng):
    for _ in range(200):
        fam = theorem10_family(int(rng.integers(1, 7)), rng)
        prefix = random_prefix(fam, rng)
        vecs = [v for i in prefix for v in fam.family.sets[i]]
        assert prefix_rank_via_graph(fam, prefix) == naive_rank(vecs, 2)


def test_degree_split(rng):
    for _ in range(50):
        fam = theorem10_family(5, rng)
        st = prefix_graph_stats(fam, random_prefix(fam, rng))
        assert st.k == st.k1 + 2 * st.k2 + 3 * st.k3
        assert st.units == st.k1 + st.k2 + st.k3
