import pytest

from dynnetlab.dynamic_graph import DynamicGraph, load_dynamic_graph, save_dynamic_graph
from dynnetlab.explorer import (
    COUNTEREXAMPLE,
    EXHAUSTIVE,
    HOLDS,
    NOT_APPLICABLE,
    RANDOMIZED,
    SearchBudget,
    check_conjecture1,
    property_suite,
    search_counterexample,
)
from dynnetlab.generators import (
    alternating_matchings_ring,
    from_static,
    oit_iit_gap_graph,
    path_edges,
    soifer,
)


def test_conjecture_holds_on_rotating_matchings():
    for n in (4, 6, 8):
        verdict = check_conjecture1(soifer(n))
        assert verdict.holds
        assert verdict.scanned == (0, n - 2)


def test_conjecture_holds_on_alternating_rings():
    for n in (4, 6, 8):
        assert check_conjecture1(alternating_matchings_ring(n)).holds


def test_conjecture_not_applicable_without_unit_growth():
    verdict = check_conjecture1(oit_iit_gap_graph(6, 2))
    assert verdict.status == NOT_APPLICABLE
    assert "not 1" in verdict.reason


def test_known_counterexample_is_detected():
    # Unit growth everywhere, yet after the perfect-matching round no node
    # can spread to all four others within two rounds.
    g = DynamicGraph.explicit(
        4,
        [
            [(1, 3), (2, 4)],
            [(1, 2), (3, 4)],
            [(1, 2), (1, 3), (3, 4)],
            [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        ],
    )
    verdict = check_conjecture1(g)
    assert verdict.status == COUNTEREXAMPLE
    assert verdict.t == 1
    assert verdict.witness is g


def test_exhaustive_search_finds_replayable_counterexample():
    found = search_counterexample(SearchBudget(4, 6, EXHAUSTIVE))
    assert found is not None
    g, t = found
    replay = check_conjecture1(load_dynamic_graph(save_dynamic_graph(g)))
    assert replay.status == COUNTEREXAMPLE
    assert replay.t == t


def test_exhaustive_search_proves_three_node_property():
    # On three nodes every covering instance has a degree-2 node, so some
    # node always spreads fully in one round: the search must come up empty.
    for horizon in (2, 4, 6):
        assert search_counterexample(SearchBudget(3, horizon, EXHAUSTIVE)) is None


def test_exhaustive_search_is_deterministic():
    a = search_counterexample(SearchBudget(4, 4, EXHAUSTIVE))
    b = search_counterexample(SearchBudget(4, 4, EXHAUSTIVE))
    assert a is not None and b is not None
    assert a[0] == b[0] and a[1] == b[1]


def test_pruned_search_agrees_with_unpruned_reference():
    for horizon in (1, 2, 3, 4):
        fast = search_counterexample(SearchBudget(4, horizon, EXHAUSTIVE))
        slow = search_counterexample(SearchBudget(4, horizon, EXHAUSTIVE, prune=False))
        assert (fast is None) == (slow is None)
        if fast is not None:
            assert fast[0] == slow[0] and fast[1] == slow[1]


def test_randomized_search_is_deterministic():
    budget = SearchBudget(4, 8, RANDOMIZED, trials=40, seed=9)
    assert search_counterexample(budget) == search_counterexample(budget)


def test_randomized_counterexamples_replay():
    # Violations of the full-spread property are common among sparse
    # unit-growth samples, not just adversarial constructions.
    found = search_counterexample(SearchBudget(6, 12, RANDOMIZED, trials=300, seed=0))
    assert found is not None
    g, t = found
    verdict = check_conjecture1(g)
    assert verdict.status == COUNTEREXAMPLE and verdict.t == t


def test_exhaustive_budget_rejects_large_n():
    with pytest.raises(ValueError):
        SearchBudget(8, 4, EXHAUSTIVE)


def test_budget_rejects_bad_parameters():
    with pytest.raises(ValueError):
        SearchBudget(4, 0, EXHAUSTIVE)
    with pytest.raises(ValueError):
        SearchBudget(4, 4, "guess")
    with pytest.raises(ValueError):
        SearchBudget(4, 4, RANDOMIZED, trials=0)


def test_property_suite_passes_on_good_families():
    for g in (soifer(8), alternating_matchings_ring(8), from_static(4, path_edges(4))):
        report = property_suite(g)
        assert report.passed
        assert {c.name for c in report.checks} == {
            "window-edge-floor",
            "double-influence",
            "influence-window-connectivity",
            "influence-before-connectivity",
        }


def test_property_suite_marks_non_applicable_checks():
    report = property_suite(oit_iit_gap_graph(6, 2))
    assert report.passed
    assert report.by_name("double-influence").status == NOT_APPLICABLE


def test_property_suite_on_sparse_one_edge_rounds():
    # One edge per round: growth needs several rounds, so the floor check
    # evaluates multi-round windows and double-influence does not apply.
    g = DynamicGraph.periodic(4, [[(1, 2)], [(3, 4)], [(1, 3)], [(2, 4)]])
    report = property_suite(g)
    floor = report.by_name("window-edge-floor")
    assert floor.status == "pass" and "window" in floor.detail
    assert report.by_name("double-influence").status == NOT_APPLICABLE


def test_property_suite_is_pure():
    g = soifer(6)
    assert property_suite(g) == property_suite(g)
