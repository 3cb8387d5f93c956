"""Causal influence over dynamic graphs and the derived metrics.

The one-step influence relation lets a state (u, t) reach (u, t+1) always
and (v, t+1) whenever {u, v} is an edge of round t+1; causal influence is
its reflexive-transitive closure.  ``future_set``/``past_set`` compute
the forward and backward cones of a time-node exactly.  The metric
functions answer, over an evaluation envelope of start times:

* ``compute_oit`` -- the max delay before any state's influence cone must
  pick up a new node (outgoing influence time),
* ``compute_iit`` -- the symmetric incoming metric over causal pasts,
* ``compute_moi`` -- the largest single-round jump of any influence cone,
* ``compute_ct``  -- the smallest window length whose edge union is
  always connected (connectivity time),
* ``dynamic_diameter`` -- the smallest d with every (u, t) reaching every
  node by t+d.

For recurring (periodic / eventually periodic) schedules, scanning start
times over the prefix plus one period is exhaustive, so results carry
``exact=True``.  Explicit schedules yield witnessed bounds over the
horizon (``exact=False``).  All functions are pure; inputs are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dynamic_graph import DynamicGraph, EdgeSet, edge_period, is_connected

INF = math.inf

FUTURE = "future"
PAST = "past"


@dataclass(frozen=True)
class ReachRecord:
    """Causal cone of a time-node with per-member influence times.

    For direction ``future`` the origin is (node, time) and ``members``
    maps each reached node to the earliest time its state is influenced.
    For direction ``past`` the origin is (node, time) and ``members``
    maps each influencing node to the latest start time (at or above the
    queried lower bound) from which it still reaches the origin.  The
    origin node is always a member (causal influence is reflexive).
    """

    node: int
    time: int
    direction: str
    members: dict[int, int]

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class MetricResult:
    """An influence metric value with exactness flag and optional witness.

    ``value`` is None when the metric is unbounded (no finite value was
    established); with ``exact=False`` that encodes "at least bound+1".
    When ``exact`` and ``value >= 2``, ``witness`` is a (u, t, t') triple
    at which value-1 fails the metric's defining inequality.
    """

    value: int | None
    exact: bool
    witness: tuple[int, int, int] | None = None

    @property
    def is_unbounded(self) -> bool:
        return self.value is None


def _spread(members: set[int], edges: EdgeSet) -> set[int]:
    out = set(members)
    for u, v in edges:
        if u in members:
            out.add(v)
        if v in members:
            out.add(u)
    return out


def future_set(g: DynamicGraph, u: int, t: int, t_prime: int) -> ReachRecord:
    """Nodes whose t'-state is causally influenced by (u, t)."""
    if not (0 <= t <= t_prime):
        raise ValueError(f"need 0 <= t <= t', got t={t}, t'={t_prime}")
    if not (1 <= u <= g.n):
        raise ValueError(f"node {u} out of range 1..{g.n}")
    members = {u: t}
    current = {u}
    for r in range(t + 1, t_prime + 1):
        grown = _spread(current, g.instance(r))
        for v in grown - current:
            members[v] = r
        current = grown
    return ReachRecord(u, t, FUTURE, members)


def past_set(g: DynamicGraph, u: int, t_prime: int, t: int) -> ReachRecord:
    """Nodes whose t-state causally influences (u, t').

    Symmetric to :func:`future_set`: v is a member here exactly when u is
    a member of v's future cone from time t.
    """
    if not (0 <= t <= t_prime):
        raise ValueError(f"need 0 <= t <= t', got t={t}, t'={t_prime}")
    if not (1 <= u <= g.n):
        raise ValueError(f"node {u} out of range 1..{g.n}")
    members = {u: t_prime}
    current = {u}
    for r in range(t_prime, t, -1):
        grown = _spread(current, g.instance(r))
        for v in grown - current:
            members[v] = r - 1
        current = grown
    return ReachRecord(u, t_prime, PAST, members)


# -- evaluation envelope ---------------------------------------------------

SATURATED = "saturated"
STALLED = "stalled"
HORIZON = "horizon"


def _start_times(g: DynamicGraph) -> range:
    """State times whose onward schedules cover all distinct behaviour:
    every state within the horizon for explicit schedules, the prefix
    plus one period for recurring ones (later starts repeat earlier ones
    shifted by the period)."""
    return range(0, len(g.rounds))


def _tail_info(g: DynamicGraph) -> tuple[int, int]:
    """(prefix, period) of the recurring part; explicit schedules have none."""
    if g.kind == "periodic":
        return 0, len(g.rounds)
    if g.kind == "eventually_periodic":
        return g.prefix, len(g.rounds) - g.prefix
    return 0, 0


def _future_profile(g: DynamicGraph, u: int, t: int) -> tuple[list[int], str]:
    """Sizes of future_set(g, u, t, t+j) for j = 0, 1, ... until the cone
    saturates, provably stalls forever, or the horizon ends."""
    sizes = [1]
    current = {u}
    if g.kind == "explicit":
        for r in range(t + 1, len(g.rounds) + 1):
            current = _spread(current, g.rounds[r - 1])
            sizes.append(len(current))
            if len(current) == g.n:
                return sizes, SATURATED
        return sizes, HORIZON
    prefix, period = _tail_info(g)
    quiet = 0
    r = t + 1
    cap = (prefix + period) * (g.n + 3) + 8
    while True:
        grown = _spread(current, g.instance(r))
        if len(grown) == g.n:
            sizes.append(g.n)
            return sizes, SATURATED
        if len(grown) == len(current) and r > prefix:
            quiet += 1
            if quiet >= period:
                # A full period of tail rounds added nothing; the same
                # rounds repeat forever, so the cone is frozen.
                return sizes, STALLED
        elif len(grown) > len(current):
            quiet = 0
        sizes.append(len(grown))
        current = grown
        r += 1
        if r - t > cap:
            raise RuntimeError("influence scan exceeded its safety cap")


def _required_delay(sizes: list[int], disposition: str, n: int) -> tuple[float, int]:
    """Smallest k consistent with every checkable growth constraint.

    Returns (k, j) where j is the start index of the critical flat run
    (the witness time offset).  k is INF when the cone provably stalls
    forever before reaching all n nodes.
    """
    if sizes[0] == n:
        return 1, 0
    best: float = 1
    best_j = 0
    run_start = 0
    for j in range(1, len(sizes)):
        if sizes[j] > sizes[j - 1]:
            gap = j - run_start
            if gap > best:
                best, best_j = gap, run_start
            run_start = j
    if sizes[-1] < n:
        if disposition == STALLED:
            return INF, run_start
        # Horizon cut: every checkable k up to the trailing run length is
        # refuted, so the smallest consistent k is one past it.
        gap = len(sizes) - run_start
        if gap > best:
            best, best_j = gap, run_start
    return best, best_j


def _encode(g: DynamicGraph, required: float, bound: int, witness: tuple[int, int, int] | None) -> MetricResult:
    if required is INF:
        return MetricResult(None, exact=g.is_recurring, witness=witness)
    if required > bound:
        return MetricResult(None, exact=False, witness=witness)
    return MetricResult(int(required), exact=g.is_recurring,
                        witness=witness if required >= 2 else None)


def compute_oit(g: DynamicGraph, k_max: int) -> MetricResult:
    """Outgoing influence time: smallest k such that every influence cone
    grows within any k consecutive rounds while not yet covering V."""
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    required: float = 1
    witness: tuple[int, int, int] | None = None
    for t in _start_times(g):
        for u in range(1, g.n + 1):
            sizes, disposition = _future_profile(g, u, t)
            k, j = _required_delay(sizes, disposition, g.n)
            if k > required:
                required, witness = k, (u, t, t + j)
            if required is INF:
                return _encode(g, required, k_max, witness)
    return _encode(g, required, k_max, witness)


def compute_iit(g: DynamicGraph, k_max: int) -> MetricResult:
    """Incoming influence time: the symmetric metric over causal pasts."""
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    required: float = 1
    witness: tuple[int, int, int] | None = None
    for t in _start_times(g):
        sizes_by_node, disposition = _past_profiles(g, t)
        for u in range(1, g.n + 1):
            final_full = sizes_by_node[u][-1] == g.n
            dispo = SATURATED if final_full else disposition
            k, j = _required_delay(sizes_by_node[u], dispo, g.n)
            if k > required:
                required, witness = k, (u, t, t + j)
            if required is INF:
                return _encode(g, required, k_max, witness)
    return _encode(g, required, k_max, witness)


def _past_profiles(g: DynamicGraph, t: int) -> tuple[dict[int, list[int]], str]:
    """For every node u, sizes of past_set(g, u, t+j, t) for j = 0, 1, ...

    Propagates, per node, the set of time-t states that have reached it;
    |that set| at time t+j equals the causal past's size.  Stops when all
    pasts saturate, the whole vector is provably frozen, or the horizon
    ends.
    """
    reached: dict[int, frozenset[int]] = {u: frozenset({u}) for u in range(1, g.n + 1)}
    sizes: dict[int, list[int]] = {u: [1] for u in reached}
    if g.kind == "explicit":
        for r in range(t + 1, len(g.rounds) + 1):
            reached = _merge_round(reached, g.rounds[r - 1])
            for u, s in reached.items():
                sizes[u].append(len(s))
            if all(len(s) == g.n for s in reached.values()):
                return sizes, SATURATED
        return sizes, HORIZON
    prefix, period = _tail_info(g)
    quiet = 0
    r = t + 1
    cap = (prefix + period) * (g.n * g.n + 4) + 8
    while True:
        merged = _merge_round(reached, g.instance(r))
        if all(len(s) == g.n for s in merged.values()):
            for u, s in merged.items():
                sizes[u].append(len(s))
            return sizes, SATURATED
        if merged == reached and r > prefix:
            quiet += 1
            if quiet >= period:
                return sizes, STALLED
        else:
            if merged != reached:
                quiet = 0
            reached = merged
        for u, s in merged.items():
            sizes[u].append(len(s))
        r += 1
        if r - t > cap:
            raise RuntimeError("influence scan exceeded its safety cap")


def _merge_round(reached: dict[int, frozenset[int]], edges: EdgeSet) -> dict[int, frozenset[int]]:
    merged = dict(reached)
    for u, v in edges:
        merged[u] = merged[u] | reached[v]
        merged[v] = merged[v] | reached[u]
    return merged


def compute_moi(g: DynamicGraph) -> MetricResult:
    """Largest single-round jump in any influence cone's size."""
    best = 0
    witness: tuple[int, int, int] | None = None
    for t in _start_times(g):
        for u in range(1, g.n + 1):
            sizes, _ = _future_profile(g, u, t)
            for j in range(1, len(sizes)):
                jump = sizes[j] - sizes[j - 1]
                if jump > best:
                    best = jump
                    witness = (u, t, t + j - 1)
    return MetricResult(best, exact=g.is_recurring, witness=witness)


def compute_ct(g: DynamicGraph, k_max: int) -> MetricResult:
    """Connectivity time: smallest k with every scanned length-k window's
    edge union connected."""
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if g.kind == "explicit":
        horizon = len(g.rounds)
        last_bad = None
        for k in range(1, k_max + 1):
            bad = _disconnected_window(g, k, range(1, horizon - k + 2))
            if bad is None:
                return MetricResult(k, exact=False,
                                    witness=None if k == 1 else last_bad)
            last_bad = bad
        return MetricResult(None, exact=False, witness=last_bad)
    prefix, period = _tail_info(g)
    starts = range(1, prefix + period + 1)
    last_bad = None
    for k in range(1, k_max + 1):
        bad = _disconnected_window(g, k, starts)
        if bad is None:
            return MetricResult(k, exact=True,
                                witness=None if k == 1 else last_bad)
        last_bad = bad
    # Distinguish "finite but beyond the bound" from "never connected":
    # a window of length prefix + 2*period contains every edge that ever
    # appears from its start onwards, so a disconnected one stays bad at
    # every length.
    span = prefix + 2 * period
    if _disconnected_window(g, span, starts) is not None:
        return MetricResult(None, exact=True, witness=last_bad)
    return MetricResult(None, exact=False, witness=last_bad)


def _disconnected_window(g: DynamicGraph, k: int, starts) -> tuple[int, int, int] | None:
    """First scanned window of length k whose union is disconnected,
    reported as (witness node, start round, end round); None if all pass."""
    for t in starts:
        union = g.window_union(t, k)
        if not is_connected(g.n, union):
            return (_separated_node(g.n, union), t, t + k - 1)
    return None


def _separated_node(n: int, edges: EdgeSet) -> int:
    """Smallest node not in node 1's component (assumes disconnected)."""
    member = {1}
    stack = [1]
    adj: dict[int, list[int]] = {u: [] for u in range(1, n + 1)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in member:
                member.add(v)
                stack.append(v)
    return min(set(range(1, n + 1)) - member)


def dynamic_diameter(g: DynamicGraph, d_max: int) -> MetricResult:
    """Smallest d such that every scanned (u, t) reaches every node by t+d."""
    if d_max < 1:
        raise ValueError(f"d_max must be >= 1, got {d_max}")
    required: float = 1
    witness: tuple[int, int, int] | None = None
    for t in _start_times(g):
        for u in range(1, g.n + 1):
            sizes, disposition = _future_profile(g, u, t)
            if disposition == SATURATED:
                d: float = len(sizes) - 1
                cand = (u, t, t + max(len(sizes) - 2, 0))
            elif disposition == STALLED:
                d = INF
                cand = (u, t, t + len(sizes) - 1)
            else:
                d = len(sizes)  # horizon cut: smallest unrefuted delay
                cand = (u, t, t + len(sizes) - 1)
            if d > required:
                required = d
                witness = cand
            if required is INF:
                return _encode_diameter(g, required, d_max, witness)
    return _encode_diameter(g, required, d_max, witness)


def _encode_diameter(g: DynamicGraph, required: float, bound: int,
                     witness: tuple[int, int, int] | None) -> MetricResult:
    if required is INF:
        return MetricResult(None, exact=g.is_recurring, witness=witness)
    if required > bound:
        return MetricResult(None, exact=False, witness=witness)
    return MetricResult(int(required), exact=g.is_recurring,
                        witness=witness if required >= 2 else None)


def metrics_summary(g: DynamicGraph, k_max: int) -> dict[str, MetricResult]:
    """All six schedule metrics, keyed by their short names."""
    period = edge_period(g, k_max)
    return {
        "oit": compute_oit(g, k_max),
        "iit": compute_iit(g, k_max),
        "moi": compute_moi(g),
        "ct": compute_ct(g, k_max),
        "edge_period": MetricResult(period.value, period.exact),
        "dynamic_diameter": dynamic_diameter(g, k_max),
    }
