import pytest

from dynnetlab.dynamic_graph import is_connected
from dynnetlab.generators import (
    alternating_matchings_ring,
    complete_edges,
    cycle_edges,
    from_static,
    oit_iit_gap_graph,
    path_edges,
    random_oit1_graph,
    soifer,
    soifer_neighbor,
    split_halves_graph,
)
from dynnetlab.influence import compute_moi, compute_oit


def _is_perfect_matching(n, edges):
    touched = [v for e in edges for v in e]
    return len(edges) == n // 2 and sorted(touched) == list(range(1, n + 1))


def test_soifer_first_two_instances_match_known_panels():
    g = soifer(8)
    assert g.instance(1) == frozenset({(1, 8), (2, 7), (3, 6), (4, 5)})
    assert g.instance(2) == frozenset({(2, 8), (1, 3), (4, 7), (5, 6)})


def test_soifer_instances_are_disjoint_perfect_matchings_covering_kn():
    for n in (4, 6, 8, 10):
        g = soifer(n)
        seen = set()
        for t in range(1, n):
            inst = g.instance(t)
            assert _is_perfect_matching(n, inst)
            assert seen.isdisjoint(inst)
            seen |= inst
        assert seen == set(complete_edges(n))


def test_soifer_rejects_odd_or_small_n():
    with pytest.raises(ValueError):
        soifer(7)
    with pytest.raises(ValueError):
        soifer(2)


def test_soifer_neighbor_known_values():
    assert soifer_neighbor(8, 1, 1) == 8
    assert soifer_neighbor(8, 3, 2) == 1


def test_soifer_neighbor_agrees_with_instances():
    for n in (4, 6, 8):
        g = soifer(n)
        for t in range(1, n):
            inst = g.instance(t)
            for k in range(1, n):
                nb = soifer_neighbor(n, k, t)
                assert tuple(sorted((k, nb))) in inst


def test_soifer_neighbor_rejects_center_and_bad_round():
    with pytest.raises(ValueError):
        soifer_neighbor(8, 8, 1)
    with pytest.raises(ValueError):
        soifer_neighbor(8, 1, 8)


def test_ring_matching_partition():
    g = alternating_matchings_ring(4)
    assert g.instance(1) == frozenset({(1, 2), (3, 4)})
    assert g.instance(2) == frozenset({(2, 3), (1, 4)})


def test_ring_consecutive_instances_disjoint_and_cover_cycle():
    for n in (4, 6, 8, 10):
        g = alternating_matchings_ring(n)
        a, b = g.instance(1), g.instance(2)
        assert not (a & b)
        assert a | b == set(cycle_edges(n))
        assert not is_connected(n, a) and not is_connected(n, b)


def test_gap_graph_round_layout():
    g = oit_iit_gap_graph(6, 1)
    assert g.instance(1) == frozenset({(1, 2), (5, 6), (2, 3), (2, 4), (2, 5)})
    assert g.instance(2) == frozenset(path_edges(6))
    g2 = oit_iit_gap_graph(6, 2)
    assert g2.instance(1) == frozenset()
    assert g2.instance(2) == frozenset({(1, 2), (5, 6), (2, 3), (2, 4), (2, 5)})
    for t in range(1, 20):
        inst = g2.instance(t)
        assert bool(inst) == (t % 2 == 0)


def test_gap_graph_rejects_bad_parameters():
    with pytest.raises(ValueError):
        oit_iit_gap_graph(4, 1)
    with pytest.raises(ValueError):
        oit_iit_gap_graph(6, 0)


def test_split_halves_never_crosses():
    g = split_halves_graph(16)
    assert g.horizon == 4
    for t in range(1, 5):
        for u, v in g.instance(t):
            assert (u <= 8) == (v <= 8)


def test_split_halves_rejects_bad_n():
    with pytest.raises(ValueError):
        split_halves_graph(10)


def test_from_static_every_round_equal():
    g = from_static(2, [(1, 2)])
    assert g.instance(1) == g.instance(17) == frozenset({(1, 2)})


def test_sampler_is_deterministic():
    a = random_oit1_graph(5, 10, 7)
    b = random_oit1_graph(5, 10, 7)
    assert a == b
    c = random_oit1_graph(5, 10, 8)
    assert a != c  # overwhelmingly likely for differing seeds


def test_sampler_has_unit_growth_and_edge_floor():
    for n in (3, 4, 5, 6):
        for seed in range(5):
            g = random_oit1_graph(n, 8, seed)
            assert compute_oit(g, 1).value == 1
            for t in range(1, 9):
                assert len(g.instance(t)) >= -(-n // 2)


def test_sampler_concurrent_influence_at_least_two():
    for seed in range(5):
        g = random_oit1_graph(4, 8, seed)
        assert compute_moi(g).value >= 2
