import pytest
from hypothesis import given, settings, strategies as st

from dynnetlab.dynamic_graph import DynamicGraph
from dynnetlab.generators import (
    alternating_matchings_ring,
    complete_edges,
    from_static,
    oit_iit_gap_graph,
    path_edges,
    soifer,
    split_halves_graph,
)
from dynnetlab.influence import (
    compute_ct,
    compute_iit,
    compute_moi,
    compute_oit,
    dynamic_diameter,
    future_set,
    metrics_summary,
    past_set,
)

from oracles import naive_future, naive_past


def test_future_set_of_center_after_two_rounds():
    fs = future_set(soifer(8), 8, 0, 2)
    assert fs.nodes == frozenset({8, 1, 2, 3})
    assert fs.members[8] == 0 and fs.members[1] == 1
    assert fs.members[2] == 2 and fs.members[3] == 2


def test_reach_is_reflexive_at_zero_delay():
    g = alternating_matchings_ring(6)
    assert future_set(g, 3, 2, 2).nodes == frozenset({3})
    assert past_set(g, 3, 2, 2).nodes == frozenset({3})


def test_two_step_spread_on_small_ring():
    fs = future_set(alternating_matchings_ring(4), 1, 0, 2)
    assert fs.nodes == frozenset({1, 2, 3, 4})


def test_past_set_static_complete():
    g = from_static(3, complete_edges(3))
    assert past_set(g, 1, 1, 0).nodes == frozenset({1, 2, 3})


def test_past_set_records_latest_departures():
    g = oit_iit_gap_graph(6, 1)
    ps = past_set(g, 1, 1, 0)
    assert ps.nodes == frozenset({1, 2})
    assert ps.members[1] == 1 and ps.members[2] == 0


def test_growth_law_for_rotating_matchings():
    g = soifer(8)
    for t in range(1, 6):
        assert len(future_set(g, 8, 0, t)) == min(2 * t, 8)


def test_oit_values_on_families():
    r = compute_oit(soifer(8), 32)
    assert r.value == 1 and r.exact
    for n in (4, 6, 8):
        r = compute_oit(alternating_matchings_ring(n), 4 * n)
        assert r.value == 1 and r.exact
    r = compute_oit(oit_iit_gap_graph(6, 1), 24)
    assert r.value == 1 and r.exact
    r = compute_oit(oit_iit_gap_graph(6, 2), 32)
    assert r.value == 2 and r.exact
    r = compute_oit(from_static(4, [(1, 2), (3, 4)]), 16)
    assert r.is_unbounded and r.exact


def test_iit_values_on_families():
    assert compute_iit(from_static(4, complete_edges(4)), 16).value == 1
    r = compute_iit(oit_iit_gap_graph(6, 1), 24)
    assert r.exact and r.value >= 3
    r = compute_iit(soifer(8), 32)
    assert 1 <= r.value <= 6


def test_moi_values():
    assert compute_moi(from_static(5, complete_edges(5))).value == 4
    assert compute_moi(soifer(8)).value == 2


def test_ct_values():
    assert compute_ct(from_static(4, path_edges(4)), 16).value == 1
    r = compute_ct(alternating_matchings_ring(8), 16)
    assert r.value == 2 and r.exact
    r = compute_ct(split_halves_graph(16), 64)
    assert r.value >= 5


def test_dynamic_diameter_values():
    assert dynamic_diameter(from_static(4, complete_edges(4)), 16).value == 1
    assert dynamic_diameter(from_static(4, path_edges(4)), 16).value == 3
    r = dynamic_diameter(soifer(8), 32)
    assert r.value == 4 and r.exact


def test_unbounded_metrics_report_witness_of_failure():
    r = compute_oit(from_static(2, []), 8)
    assert r.is_unbounded and r.exact


def test_exactness_flags_follow_schedule_kind():
    summary = metrics_summary(split_halves_graph(16), 64)
    assert all(not m.exact for m in summary.values())
    summary = metrics_summary(soifer(6), 24)
    assert all(m.exact for m in summary.values())


def test_witness_refutes_value_minus_one():
    r = compute_oit(oit_iit_gap_graph(6, 3), 36)
    assert r.value == 3 and r.witness is not None
    u, t, t_prime = r.witness
    before = len(future_set(oit_iit_gap_graph(6, 3), u, t, t_prime))
    after = len(future_set(oit_iit_gap_graph(6, 3), u, t, t_prime + r.value - 1))
    assert before < 6 and after < min(before + 1, 6)


def test_bound_exhaustion_encodes_at_least():
    r = compute_iit(oit_iit_gap_graph(6, 2), 3)
    assert r.is_unbounded and not r.exact


# -- property tests -----------------------------------------------------------

_edge = st.tuples(st.integers(1, 5), st.integers(1, 5)).filter(lambda e: e[0] != e[1])
_round = st.lists(_edge, max_size=5)


@settings(max_examples=40, deadline=None)
@given(
    rounds=st.lists(_round, min_size=1, max_size=4),
    u=st.integers(1, 5),
    v=st.integers(1, 5),
    t=st.integers(0, 3),
    delta=st.integers(0, 5),
)
def test_past_future_duality(rounds, u, v, t, delta):
    g = DynamicGraph.periodic(5, rounds)
    t_prime = t + delta
    assert (v in past_set(g, u, t_prime, t)) == (u in future_set(g, v, t, t_prime))


@settings(max_examples=40, deadline=None)
@given(
    rounds=st.lists(_round, min_size=1, max_size=4),
    u=st.integers(1, 5),
    t=st.integers(0, 3),
    delta=st.integers(0, 4),
)
def test_reach_sets_are_monotone_in_horizon(rounds, u, t, delta):
    g = DynamicGraph.periodic(5, rounds)
    tp = t + delta
    assert future_set(g, u, t, tp).nodes <= future_set(g, u, t, tp + 1).nodes
    assert past_set(g, u, tp, t).nodes <= past_set(g, u, tp + 1, t).nodes


@settings(max_examples=30, deadline=None)
@given(
    rounds=st.lists(_round, min_size=1, max_size=3),
    u=st.integers(1, 5),
    t=st.integers(0, 2),
    delta=st.integers(0, 4),
)
def test_reach_matches_time_expanded_search(rounds, u, t, delta):
    g = DynamicGraph.periodic(5, rounds)
    tp = t + delta
    assert future_set(g, u, t, tp).nodes == naive_future(g, u, t, tp)
    assert past_set(g, u, tp, t).nodes == naive_past(g, u, tp, t)


def test_oit_never_exceeds_ct_when_both_exact():
    for g in (
        soifer(6),
        soifer(8),
        alternating_matchings_ring(6),
        oit_iit_gap_graph(6, 2),
        from_static(5, path_edges(5)),
    ):
        oit = compute_oit(g, 40)
        ct = compute_ct(g, 40)
        assert oit.exact and ct.exact
        assert oit.value <= ct.value
