import json

import pytest
from hypothesis import given, settings, strategies as st

from dynnetlab.dynamic_graph import (
    DynamicGraph,
    ScheduleParseError,
    ScheduleRangeError,
    edge_period,
    graph_to_dict,
    interval_compress,
    is_connected,
    is_interval_connected,
    load_dynamic_graph,
    save_dynamic_graph,
)
from dynnetlab.generators import (
    alternating_matchings_ring,
    complete_edges,
    from_static,
    soifer,
)


def test_instance_periodic_wraparound():
    g = DynamicGraph.periodic(3, [[(1, 2)], [(2, 3)]])
    assert g.instance(3) == g.instance(1)
    assert g.instance(4) == g.instance(2)
    assert g.instance(101) == g.instance(1)


def test_instance_explicit_horizon_error():
    g = DynamicGraph.explicit(3, [[(1, 2)]] * 5)
    assert g.instance(5) == frozenset({(1, 2)})
    with pytest.raises(ScheduleRangeError):
        g.instance(6)
    with pytest.raises(ScheduleRangeError):
        g.instance(0)


def test_instance_eventually_periodic_prefix_then_cycle():
    g = DynamicGraph.eventually_periodic(3, [[(1, 2)]], [[(2, 3)], [(1, 3)]])
    assert g.instance(1) == frozenset({(1, 2)})
    assert g.instance(2) == frozenset({(2, 3)})
    assert g.instance(3) == frozenset({(1, 3)})
    assert g.instance(4) == frozenset({(2, 3)})
    assert g.prefix == 1 and g.period == 2


def test_window_union_singleton_is_instance():
    g = soifer(8)
    for t in (1, 3, 7):
        assert g.window_union(t, 1) == g.instance(t)


def test_window_union_two_matchings_is_ring():
    g = alternating_matchings_ring(4)
    assert g.window_union(1, 2) == frozenset({(1, 2), (3, 4), (2, 3), (1, 4)})


def test_window_union_full_period_covers_complete_graph():
    g = soifer(8)
    assert g.window_union(1, 7) == frozenset(complete_edges(8))


def test_window_union_beyond_explicit_horizon_errors():
    g = DynamicGraph.explicit(3, [[(1, 2)]] * 4)
    with pytest.raises(ScheduleRangeError):
        g.window_union(3, 3)


def test_edge_period_static_graph_is_one():
    assert edge_period(from_static(3, [(1, 2), (2, 3)]), 5).value == 1


def test_edge_period_unbounded_when_nothing_reappears():
    g = DynamicGraph.explicit(3, [[(1, 2)], [(2, 3)], [(1, 3)]])
    result = edge_period(g, 10)
    assert result.is_unbounded and not result.exact


def test_interval_connectivity_static_connected():
    g = from_static(4, [(1, 2), (2, 3), (3, 4)])
    assert is_interval_connected(g, 1)
    assert is_interval_connected(g, 5)


def test_interval_connectivity_matchings_disconnected():
    assert not is_interval_connected(soifer(8), 1)
    assert not is_interval_connected(alternating_matchings_ring(8), 2)


def test_interval_compress_identity_window():
    g = soifer(6)
    assert interval_compress(g, 1) is g


def test_interval_compress_ring_window_two_gives_static_ring():
    g = interval_compress(alternating_matchings_ring(8), 2)
    assert g.kind == "periodic" and g.period == 1
    assert is_interval_connected(g, 1)


def test_interval_compress_non_dividing_window_stays_periodic():
    g = interval_compress(soifer(8), 4)
    assert g.kind == "periodic" and g.period == 7
    assert is_interval_connected(g, 1)
    for t in range(1, 8):
        assert g.instance(t) == soifer(8).window_union((t - 1) * 4 + 1, 4)


def test_interval_compress_explicit_truncates_partial_window():
    g = DynamicGraph.explicit(3, [[(1, 2)], [(2, 3)], [(1, 3)], [(1, 2)], [(2, 3)]])
    c = interval_compress(g, 2)
    assert c.kind == "explicit" and c.horizon == 2
    assert c.truncated_rounds == 1
    assert c.instance(1) == frozenset({(1, 2), (2, 3)})


def test_round_trip_soifer4():
    g = soifer(4)
    assert load_dynamic_graph(save_dynamic_graph(g)) == g


def test_parse_rejects_out_of_range_endpoint():
    doc = {"n": 3, "kind": "explicit", "horizon": 1, "rounds": [[[0, 1]]]}
    with pytest.raises(ScheduleParseError, match="round 1"):
        load_dynamic_graph(json.dumps(doc))


def test_parse_rejects_self_loop():
    doc = {"n": 3, "kind": "explicit", "horizon": 1, "rounds": [[[2, 2]]]}
    with pytest.raises(ScheduleParseError, match="self-loop"):
        load_dynamic_graph(json.dumps(doc))


def test_parse_deduplicates_with_warning():
    doc = {"n": 3, "kind": "explicit", "horizon": 1, "rounds": [[[1, 2], [2, 1]]]}
    with pytest.warns(UserWarning, match="duplicate"):
        g = load_dynamic_graph(json.dumps(doc))
    assert g.instance(1) == frozenset({(1, 2)})


def test_parse_rejects_wrong_round_count():
    doc = {"n": 2, "kind": "periodic", "period": 3, "rounds": [[[1, 2]]]}
    with pytest.raises(ScheduleParseError, match="period"):
        load_dynamic_graph(json.dumps(doc))


def test_is_connected_basics():
    assert is_connected(1, [])
    assert not is_connected(2, [])
    assert is_connected(3, [(1, 2), (2, 3)])
    assert not is_connected(4, [(1, 2), (3, 4)])


# -- property tests ----------------------------------------------------------

_edge = st.tuples(st.integers(1, 5), st.integers(1, 5)).filter(lambda e: e[0] != e[1])
_round = st.lists(_edge, max_size=6)


def _graph(kind: str, rounds: list) -> DynamicGraph:
    if kind == "explicit":
        return DynamicGraph.explicit(5, rounds)
    if kind == "periodic":
        return DynamicGraph.periodic(5, rounds)
    return DynamicGraph.eventually_periodic(5, rounds[:1], rounds[1:])


@settings(max_examples=60, deadline=None)
@given(
    kind=st.sampled_from(["explicit", "periodic", "eventually_periodic"]),
    rounds=st.lists(_round, min_size=2, max_size=5),
)
def test_serializer_round_trip_is_identity(kind, rounds):
    g = _graph(kind, rounds)
    assert load_dynamic_graph(save_dynamic_graph(g)) == g
    assert load_dynamic_graph(json.dumps(graph_to_dict(g))) == g


@settings(max_examples=60, deadline=None)
@given(
    rounds=st.lists(_round, min_size=1, max_size=4),
    t=st.integers(1, 6),
    a=st.integers(1, 4),
    b=st.integers(1, 4),
)
def test_window_union_splits_additively(rounds, t, a, b):
    g = DynamicGraph.periodic(5, rounds)
    whole = g.window_union(t, a + b)
    assert whole == g.window_union(t, a) | g.window_union(t + a, b)


@settings(max_examples=40, deadline=None)
@given(rounds=st.lists(_round, min_size=1, max_size=4), t=st.integers(1, 12))
def test_periodic_instances_repeat(rounds, t):
    g = DynamicGraph.periodic(5, rounds)
    assert g.instance(t) == g.instance(t + len(rounds))


@settings(max_examples=40, deadline=None)
@given(rounds=st.lists(_round, min_size=2, max_size=6), window=st.integers(1, 4))
def test_compress_matches_window_union(rounds, window):
    g = DynamicGraph.periodic(5, rounds)
    c = interval_compress(g, window)
    for t in range(1, (c.period or 1) + 3):
        assert c.instance(t) == g.window_union((t - 1) * window + 1, window)


def test_edge_period_monotone_under_added_edges():
    base = alternating_matchings_ring(6)
    denser = DynamicGraph.periodic(
        6, [list(base.instance(1)) + [(1, 4)], list(base.instance(2)) + [(1, 4)]]
    )
    assert edge_period(denser, 10).value <= edge_period(base, 10).value
