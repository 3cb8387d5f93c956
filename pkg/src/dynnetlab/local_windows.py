"""Cover-time model: a fixed communication graph with per-node windows.

Here a static connected graph C = (V, A) underlies the dynamic schedule
and each node u carries a cover time c_u >= 1: within every window of
c_u consecutive rounds, u's dynamic neighborhood must union to exactly
its static neighborhood N(u).  A schedule meeting that guarantee for
every node *respects* the cover vector.

Edge e = {u, v} then reappears at least once in every min(c_u, c_v)
rounds, which makes min(c_u, c_v) the worst-case per-hop delay.  Path
delays, the weighted dynamic diameter, and the cover-sum termination
clocks (psum / fsum) all build on that bound.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from functools import cached_property

from .dynamic_graph import (
    DynamicGraph,
    Edge,
    is_connected,
    normalize_edges,
    sorted_edges,
)
from .influence import future_set, past_set


class ModelViolationError(ValueError):
    """The (schedule, cover network) pair breaks a model assumption."""


@dataclass(frozen=True)
class CoverNetwork:
    """Static connected graph plus a per-node cover-time vector."""

    n: int
    edges: frozenset[Edge]
    cover: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", normalize_edges(self.n, self.edges))
        object.__setattr__(self, "cover", tuple(self.cover))
        if len(self.cover) != self.n:
            raise ValueError(f"cover vector has {len(self.cover)} entries for n={self.n}")
        if any(c < 1 for c in self.cover):
            raise ValueError("cover times must be >= 1")
        if not is_connected(self.n, self.edges):
            raise ModelViolationError("the underlying communication graph must be connected")

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {u: set() for u in range(1, self.n + 1)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {u: frozenset(vs) for u, vs in adj.items()}

    def neighbors(self, u: int) -> frozenset[int]:
        return self.adjacency[u]

    def cover_of(self, u: int) -> int:
        return self.cover[u - 1]

    def edge_weight(self, u: int, v: int) -> int:
        """Worst-case reappearance interval of edge {u, v}."""
        e = (u, v) if u < v else (v, u)
        if e not in self.edges:
            raise ValueError(f"{e} is not an edge of the communication graph")
        return min(self.cover_of(u), self.cover_of(v))


def network_to_dict(net: CoverNetwork) -> dict:
    return {
        "n": net.n,
        "edges": [list(e) for e in sorted_edges(net.edges)],
        "cover": list(net.cover),
    }


def network_from_dict(doc: dict) -> CoverNetwork:
    for key in ("n", "edges", "cover"):
        if key not in doc:
            raise ValueError(f"cover network document missing field {key!r}")
    return CoverNetwork(doc["n"], frozenset(tuple(e) for e in doc["edges"]), tuple(doc["cover"]))


def save_network(net: CoverNetwork) -> str:
    return json.dumps(network_to_dict(net), indent=2)


def load_network(text: str) -> CoverNetwork:
    return network_from_dict(json.loads(text))


def respects(g: DynamicGraph, net: CoverNetwork) -> bool:
    """True iff every node's schedule covers its whole static neighborhood
    within every window of its cover time.

    Schedule edges outside the communication graph are a model violation
    (raised, not returned as False).  For recurring schedules, scanning
    window starts over the prefix plus one period is exhaustive; explicit
    schedules are checked on every window that fits the horizon.
    """
    if g.n != net.n:
        raise ModelViolationError(f"schedule has {g.n} nodes, network has {net.n}")
    stray = g.all_edges() - net.edges
    if stray:
        raise ModelViolationError(
            f"schedule uses edges outside the communication graph: {sorted(stray)}"
        )
    for u in range(1, net.n + 1):
        c_u = net.cover_of(u)
        if g.kind == "explicit":
            last = len(g.rounds) - c_u + 1
        else:
            last = len(g.rounds)  # prefix + one period of window starts
        for r in range(1, last + 1):
            window = g.window_union(r, c_u)
            seen = {v for a, v in window if a == u} | {a for a, v in window if v == u}
            if seen != net.neighbors(u):
                return False
    return True


def admits_worst_case(net: CoverNetwork) -> bool:
    """True iff every node has a neighbor with a cover time at least its
    own, the condition for a schedule that makes every cover window tight."""
    return all(
        any(net.cover_of(v) >= net.cover_of(u) for v in net.neighbors(u))
        for u in range(1, net.n + 1)
    )


def path_delay(path: list[int], net: CoverNetwork) -> int:
    """Worst-case influence delay along a simple path: the sum of
    min(c_a, c_b) over all consecutive pairs."""
    if len(path) != len(set(path)):
        raise ValueError("path must be simple (no repeated nodes)")
    total = 0
    for a, b in zip(path, path[1:]):
        if b not in net.neighbors(a):
            raise ValueError(f"consecutive pair ({a}, {b}) is not an edge")
        total += net.edge_weight(a, b)
    return total


@dataclass(frozen=True)
class WeightedDiameter:
    """Max-over-pairs of the min-over-paths worst-case delay.

    ``path`` realizes the diameter: its delay sum equals ``value``.
    """

    value: int
    pair: tuple[int, int]
    path: tuple[int, ...]


def _dijkstra(net: CoverNetwork, source: int) -> tuple[dict[int, int], dict[int, int]]:
    dist = {source: 0}
    prev: dict[int, int] = {}
    heap = [(0, source)]
    done: set[int] = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v in net.neighbors(u):
            nd = d + net.edge_weight(u, v)
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, v))
    return dist, prev


def delay_distances(net: CoverNetwork, source: int) -> dict[int, int]:
    """Shortest worst-case delay from ``source`` to every node."""
    return _dijkstra(net, source)[0]


def weighted_dynamic_diameter(net: CoverNetwork) -> WeightedDiameter:
    """All-pairs maximum of the shortest weighted path delay.

    Edge weights min(c_u, c_v) are positive, so shortest walks are simple
    paths and plain Dijkstra is exact.
    """
    best = -1
    best_pair = (1, 1)
    best_path: tuple[int, ...] = (1,)
    for source in range(1, net.n + 1):
        dist, prev = _dijkstra(net, source)
        if len(dist) != net.n:
            raise ModelViolationError("communication graph is not connected")
        far = max(dist, key=lambda v: (dist[v], v))
        if dist[far] > best:
            best = dist[far]
            best_pair = (source, far)
            path = [far]
            while path[-1] != source:
                path.append(prev[path[-1]])
            best_path = tuple(reversed(path))
    return WeightedDiameter(best, best_pair, best_path)


def psum(g: DynamicGraph, net: CoverNetwork, u: int, t_prime: int, t: int) -> int:
    """Sum of cover times over the causal past of (u, t') down to time t."""
    record = past_set(g, u, t_prime, t)
    return sum(net.cover_of(v) for v in record.members)


def fsum(g: DynamicGraph, net: CoverNetwork, u: int, t: int, t_prime: int) -> int:
    """Sum of cover times over the future cone of (u, t) at time t'."""
    record = future_set(g, u, t, t_prime)
    return sum(net.cover_of(v) for v in record.members)


def periodic_respecting_schedule(net: CoverNetwork) -> DynamicGraph:
    """Canonical adversary: edge {u, v} fires exactly at multiples of its
    weight min(c_u, c_v).

    Every incident edge of u has weight <= c_u, so each appears in every
    c_u-window and the result respects the cover vector.  The schedule is
    periodic with period lcm of the edge weights.
    """
    weights = {e: net.edge_weight(*e) for e in net.edges}
    period = math.lcm(*weights.values()) if weights else 1
    rounds = []
    for t in range(1, period + 1):
        rounds.append([e for e, w in weights.items() if t % w == 0])
    return DynamicGraph.periodic(net.n, rounds)
