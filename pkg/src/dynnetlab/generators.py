"""Constructors for the dynamic-graph families used throughout the lab.

Every constructor is a pure function of its arguments; the one sampler
(:func:`random_oit1_graph`) confines its randomness to an explicit seed,
so identical arguments always produce identical schedules.
"""

from __future__ import annotations

import random
from itertools import combinations

from .dynamic_graph import DynamicGraph, Edge, EdgeSet, normalize_edges


class SamplerBudgetError(RuntimeError):
    """The random schedule sampler could not meet its target property."""


def _require_even(n: int, minimum: int, what: str) -> None:
    if n < minimum or n % 2 != 0:
        raise ValueError(f"{what} requires an even node count >= {minimum}, got {n}")


def soifer(n: int) -> DynamicGraph:
    """Rotating perfect-matching schedule on n nodes (n even, >= 4).

    Node n sits at the center of an (n-1)-sided polygon whose vertices
    carry nodes 1..n-1.  Round t makes available the spoke from the
    center to polygon position t plus every polygon chord perpendicular
    to that spoke.  The n-1 instances are pairwise disjoint perfect
    matchings that together cover the complete graph, so the schedule is
    periodic with period n-1 and no edge reappears in fewer than n-1
    rounds.
    """
    _require_even(n, 4, "the rotating matching schedule")
    rounds = []
    for t in range(1, n):
        def m(j: int) -> int:
            return (t - 1 + j) % (n - 1) + 1

        edges = [(n, m(0))]
        edges += [(m(-i), m(i)) for i in range(1, n // 2)]
        rounds.append(edges)
    return DynamicGraph.periodic(n, rounds)


def soifer_neighbor(n: int, k: int, t: int) -> int:
    """Unique neighbor of polygon node k at round t in :func:`soifer`.

    Computed by the closed-form rotation rule: at round 1 node k pairs
    with the center when k = 1 and with node n-k+1 otherwise; afterwards
    each node's partner advances two polygon positions per round, visiting
    the center once per period.  Must agree with the edge sets emitted by
    :func:`soifer`; the generator's instances are the ground truth.
    """
    _require_even(n, 4, "the rotating matching schedule")
    if not (1 <= k <= n - 1):
        raise ValueError(f"polygon node index must be in 1..{n - 1}, got {k}")
    if not (1 <= t <= n - 1):
        raise ValueError(f"round must be in 1..{n - 1}, got {t}")
    nb = n if k == 1 else n - k + 1
    for _ in range(t - 1):
        if nb == (k - 3) % (n - 1) + 1:
            nb = n
        elif nb == n:
            nb = (k + 1) % (n - 1) + 1
        else:
            nb = (nb + 1) % (n - 1) + 1
    return nb


def ring_matchings(nodes: list[int]) -> tuple[list[Edge], list[Edge]]:
    """The two perfect matchings whose union is the cycle over ``nodes``."""
    m = len(nodes)
    if m < 4 or m % 2 != 0:
        raise ValueError(f"a matching pair needs an even cycle of length >= 4, got {m}")
    first = [(nodes[2 * i], nodes[2 * i + 1]) for i in range(m // 2)]
    second = [(nodes[2 * i + 1], nodes[(2 * i + 2) % m]) for i in range(m // 2)]
    return first, second


def alternating_matchings_ring(n: int) -> DynamicGraph:
    """Alternate between the two perfect matchings of the n-cycle.

    Odd rounds pair (1,2), (3,4), ...; even rounds pair (2,3), (4,5),
    ..., (n,1).  Every instance is disconnected for n >= 4 yet influence
    still spreads every round.
    """
    _require_even(n, 4, "the alternating matchings ring")
    a, b = ring_matchings(list(range(1, n + 1)))
    return DynamicGraph.periodic(n, [a, b])


def oit_iit_gap_graph(n: int, k: int) -> DynamicGraph:
    """Family with fast outgoing influence but slow incoming influence.

    Round k carries {1,2}, {n-1,n}, and a fan from node 2 to every node
    3..n-1; every later multiple of k carries the full path 1-2-...-n;
    all other rounds are empty.  Encoded as a k-round prefix followed by
    a k-round repeating block so exact metric scans terminate.
    """
    if n < 5:
        raise ValueError(f"the gap family needs n >= 5, got {n}")
    if k < 1:
        raise ValueError(f"the gap family needs k >= 1, got {k}")
    fan = [(1, 2), (n - 1, n)] + [(2, i) for i in range(3, n)]
    path = [(i, i + 1) for i in range(1, n)]
    empty: list[Edge] = []
    prefix = [empty] * (k - 1) + [fan]
    cycle = [empty] * (k - 1) + [path]
    return DynamicGraph.eventually_periodic(n, prefix, cycle)


def split_halves_graph(n: int) -> DynamicGraph:
    """Two independent alternating-matching rings with no cross edges.

    Nodes split into halves of size n/2; each half runs its own ring
    matchings for n/4 rounds.  Influence spreads every round inside each
    half while the halves stay mutually unreachable for the whole
    horizon, so window unions of length n/4 are disconnected.
    """
    if n < 8 or n % 4 != 0:
        raise ValueError(f"the split-halves family needs n divisible by 4, n >= 8, got {n}")
    half = n // 2
    a1, b1 = ring_matchings(list(range(1, half + 1)))
    a2, b2 = ring_matchings(list(range(half + 1, n + 1)))
    rounds = []
    for t in range(n // 4):
        rounds.append((a1 + a2) if t % 2 == 0 else (b1 + b2))
    return DynamicGraph.explicit(n, rounds)


def from_static(n: int, edges) -> DynamicGraph:
    """Schedule in which every round's instance equals the given graph."""
    return DynamicGraph.periodic(n, [normalize_edges(n, edges)])


def complete_edges(n: int) -> list[Edge]:
    return list(combinations(range(1, n + 1), 2))


def path_edges(n: int) -> list[Edge]:
    return [(i, i + 1) for i in range(1, n)]


def cycle_edges(n: int) -> list[Edge]:
    return path_edges(n) + [(1, n)] if n >= 3 else path_edges(n)


def _base_round(n: int, rng: random.Random) -> set[Edge]:
    """A random minimal instance giving every node at least one neighbor.

    Even n: a perfect matching.  Odd n: a matching on n-3 nodes plus a
    two-edge path on the remaining three, the cheapest covering shape.
    """
    order = list(range(1, n + 1))
    rng.shuffle(order)
    edges: set[Edge] = set()
    if n % 2 == 0:
        pairs = order
    else:
        a, b, c = order[:3]
        edges.add((min(a, b), max(a, b)))
        edges.add((min(b, c), max(b, c)))
        pairs = order[3:]
    for i in range(0, len(pairs), 2):
        u, v = pairs[i], pairs[i + 1]
        edges.add((min(u, v), max(u, v)))
    return edges


def _grow(members: frozenset[int], edges) -> frozenset[int]:
    out = set(members)
    for u, v in edges:
        if u in members:
            out.add(v)
        if v in members:
            out.add(u)
    return frozenset(out)


def random_oit1_graph(n: int, horizon: int, seed: int, *, extra_edge_prob: float = 0.0) -> DynamicGraph:
    """Sample an explicit schedule whose influence sets grow every round.

    Each round starts from a random minimal covering instance and is then
    repaired: while any still-spreading influence set has no edge leaving
    it, a random crossing edge is added.  Repairs never invalidate other
    sets, so the construction always lands on a schedule with witnessed
    unit outgoing influence time over the horizon; this is re-verified
    before returning and a :class:`SamplerBudgetError` is raised rather
    than ever returning a schedule without the property.

    ``extra_edge_prob`` optionally sprinkles additional random edges per
    round for denser samples.  Deterministic in (n, horizon, seed).
    """
    if n < 3:
        raise ValueError(f"the sampler needs n >= 3, got {n}")
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    rng = random.Random(("oit1", n, horizon, seed).__repr__())
    nodes = frozenset(range(1, n + 1))
    live: set[frozenset[int]] = {frozenset({u}) for u in range(1, n + 1)}
    rounds: list[set[Edge]] = []
    budget = n * n * horizon + 1000
    for _ in range(horizon):
        edges = _base_round(n, rng)
        if extra_edge_prob > 0:
            for u, v in combinations(range(1, n + 1), 2):
                if rng.random() < extra_edge_prob:
                    edges.add((u, v))
        for members in sorted(live, key=sorted):
            if budget <= 0:
                raise SamplerBudgetError("repair budget exhausted while sampling")
            if not any((u in members) != (v in members) for u, v in edges):
                inside = rng.choice(sorted(members))
                outside = rng.choice(sorted(nodes - members))
                edges.add((min(inside, outside), max(inside, outside)))
                budget -= 1
        rounds.append(edges)
        live = {grown for s in live if (grown := _grow(s, edges)) != nodes}
        live |= {frozenset({u}) for u in range(1, n + 1)}
    g = DynamicGraph.explicit(n, rounds)
    from .influence import compute_oit  # deferred: avoids import cycle at load

    verdict = compute_oit(g, 1)
    if verdict.value != 1:
        raise SamplerBudgetError("sampled schedule failed the growth re-check")
    return g
