"""Round-indexed dynamic graph model.

A dynamic graph is a fixed node set 1..n together with an edge schedule
that assigns an undirected edge set E(t) to every round t >= 1.  Node
states live at integer times starting from 0; round t is the transition
from state t-1 to state t, so edge queries are 1-based while state/time
references are 0-based.

Three schedule kinds are supported:

* ``explicit`` -- a finite list of rounds 1..H; queries past the horizon
  raise :class:`ScheduleRangeError`.
* ``periodic`` -- a list of p rounds repeated forever.
* ``eventually_periodic`` -- q one-off prefix rounds followed by a
  repeating block of p rounds.

Graphs are immutable after construction and all queries are pure, so
values can be shared freely between threads.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

Edge = tuple[int, int]
EdgeSet = frozenset[Edge]

EXPLICIT = "explicit"
PERIODIC = "periodic"
EVENTUALLY_PERIODIC = "eventually_periodic"

_KINDS = (EXPLICIT, PERIODIC, EVENTUALLY_PERIODIC)


class ScheduleRangeError(ValueError):
    """A round (or window of rounds) falls outside an explicit horizon."""


class ScheduleParseError(ValueError):
    """Serialized schedule text violates the schedule JSON schema."""


def normalize_edge(n: int, u: int, v: int, *, where: str = "") -> Edge:
    """Validate one undirected edge and return it with endpoints ascending."""
    ctx = f" ({where})" if where else ""
    if not (1 <= u <= n and 1 <= v <= n):
        raise ScheduleParseError(f"edge endpoints [{u}, {v}] out of range 1..{n}{ctx}")
    if u == v:
        raise ScheduleParseError(f"self-loop [{u}, {v}] not allowed{ctx}")
    return (u, v) if u < v else (v, u)


def normalize_edges(n: int, edges, *, where: str = "", warn_duplicates: bool = False) -> EdgeSet:
    """Canonicalize an iterable of edges: endpoints ascending, deduplicated."""
    seen: set[Edge] = set()
    dupes = 0
    for pair in edges:
        u, v = pair
        e = normalize_edge(n, u, v, where=where)
        if e in seen:
            dupes += 1
        seen.add(e)
    if dupes and warn_duplicates:
        ctx = f" in {where}" if where else ""
        warnings.warn(f"{dupes} duplicate edge(s) dropped{ctx}", stacklevel=2)
    return frozenset(seen)


def sorted_edges(edges: EdgeSet) -> list[Edge]:
    """Edges in the canonical lexicographic order used for serialization."""
    return sorted(edges)


def is_connected(n: int, edges) -> bool:
    """True iff the static graph on nodes 1..n with these edges is connected."""
    if n <= 1:
        return True
    adj: dict[int, list[int]] = {u: [] for u in range(1, n + 1)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {1}
    stack = [1]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


@dataclass(frozen=True)
class DynamicGraph:
    """Immutable dynamic graph: node count plus a round-indexed edge schedule.

    ``rounds`` stores the explicit rounds for an explicit schedule, one
    period for a periodic one, and prefix rounds followed by one period
    for an eventually periodic one (``prefix`` gives the split point).
    ``truncated_rounds`` records input rounds dropped by window
    compression of an explicit schedule (see :func:`interval_compress`).
    """

    n: int
    kind: str
    rounds: tuple[EdgeSet, ...]
    prefix: int = 0
    truncated_rounds: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"node count must be >= 1, got {self.n}")
        if self.kind not in _KINDS:
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if not self.rounds:
            raise ValueError("schedule must contain at least one round")
        if self.kind == EVENTUALLY_PERIODIC:
            if not (0 <= self.prefix < len(self.rounds)):
                raise ValueError(
                    f"prefix {self.prefix} must leave a nonempty period "
                    f"within {len(self.rounds)} stored rounds"
                )
        elif self.prefix:
            raise ValueError(f"prefix is only meaningful for {EVENTUALLY_PERIODIC} schedules")
        for i, edges in enumerate(self.rounds):
            for u, v in edges:
                normalize_edge(self.n, u, v, where=f"round {i + 1}")
                if not (u < v):
                    raise ValueError(f"edge ({u}, {v}) in round {i + 1} is not canonical")

    # -- constructors ---------------------------------------------------

    @classmethod
    def explicit(cls, n: int, rounds) -> DynamicGraph:
        return cls(n, EXPLICIT, tuple(normalize_edges(n, r) for r in rounds))

    @classmethod
    def periodic(cls, n: int, rounds) -> DynamicGraph:
        return cls(n, PERIODIC, tuple(normalize_edges(n, r) for r in rounds))

    @classmethod
    def eventually_periodic(cls, n: int, prefix_rounds, cycle_rounds) -> DynamicGraph:
        prefix = tuple(normalize_edges(n, r) for r in prefix_rounds)
        cycle = tuple(normalize_edges(n, r) for r in cycle_rounds)
        return cls(n, EVENTUALLY_PERIODIC, prefix + cycle, prefix=len(prefix))

    # -- schedule geometry ----------------------------------------------

    @property
    def horizon(self) -> int | None:
        """Last defined round for explicit schedules, None when infinite."""
        return len(self.rounds) if self.kind == EXPLICIT else None

    @property
    def period(self) -> int | None:
        """Length of the repeating block, None for explicit schedules."""
        if self.kind == PERIODIC:
            return len(self.rounds)
        if self.kind == EVENTUALLY_PERIODIC:
            return len(self.rounds) - self.prefix
        return None

    @property
    def is_recurring(self) -> bool:
        """True for schedules defined at every round t >= 1."""
        return self.kind != EXPLICIT

    def round_defined(self, t: int) -> bool:
        return t >= 1 and (self.kind != EXPLICIT or t <= len(self.rounds))

    # -- queries ---------------------------------------------------------

    def instance(self, t: int) -> EdgeSet:
        """Edge set active during round ``t`` (1-based)."""
        if t < 1:
            raise ScheduleRangeError(f"rounds are 1-based, got t={t}")
        if self.kind == EXPLICIT:
            if t > len(self.rounds):
                raise ScheduleRangeError(
                    f"round {t} beyond explicit horizon {len(self.rounds)}"
                )
            return self.rounds[t - 1]
        if self.kind == PERIODIC:
            return self.rounds[(t - 1) % len(self.rounds)]
        if t <= self.prefix:
            return self.rounds[t - 1]
        p = len(self.rounds) - self.prefix
        return self.rounds[self.prefix + (t - self.prefix - 1) % p]

    def window_union(self, t: int, length: int) -> EdgeSet:
        """Union of E(i) over the window [t, t+length-1]."""
        if length < 1:
            raise ValueError(f"window length must be >= 1, got {length}")
        out: set[Edge] = set()
        for i in range(t, t + length):
            out |= self.instance(i)
        return frozenset(out)

    def all_edges(self) -> EdgeSet:
        """Every edge that appears in any round of the stored schedule."""
        out: set[Edge] = set()
        for edges in self.rounds:
            out |= edges
        return frozenset(out)


@dataclass(frozen=True)
class PeriodResult:
    """Fastest edge reappearance interval.

    ``value`` is the smallest p such that some edge is present in both
    E(t) and E(t+p) for some t, or None when no reappearance was found
    (unbounded).  ``exact`` is True when the scan was exhaustive, which
    holds for recurring schedules; explicit schedules yield witnessed
    bounds only.
    """

    value: int | None
    exact: bool

    @property
    def is_unbounded(self) -> bool:
        return self.value is None


def _scan_starts(g: DynamicGraph) -> int:
    """Number of round-start positions that cover all distinct behaviour."""
    if g.kind == EXPLICIT:
        return len(g.rounds)
    if g.kind == PERIODIC:
        return len(g.rounds)
    return len(g.rounds)  # prefix + one period


def edge_period(g: DynamicGraph, search_bound: int) -> PeriodResult:
    """Smallest p <= search_bound with some edge present at both t and t+p."""
    if search_bound < 1:
        raise ValueError(f"search bound must be >= 1, got {search_bound}")
    if g.kind == EXPLICIT:
        horizon = len(g.rounds)
        for p in range(1, min(search_bound, horizon - 1) + 1):
            for t in range(1, horizon - p + 1):
                if g.rounds[t - 1] & g.rounds[t + p - 1]:
                    return PeriodResult(p, exact=False)
        return PeriodResult(None, exact=False)
    # Recurring schedules: start times within prefix + one period and
    # gaps up to prefix + period cover every (t, t+p) pair that can occur.
    span = len(g.rounds)
    exhaustive = search_bound >= span
    for p in range(1, min(search_bound, span) + 1):
        for t in range(1, span + 1):
            if g.instance(t) & g.instance(t + p):
                return PeriodResult(p, exact=True)
    return PeriodResult(None, exact=exhaustive)


def is_interval_connected(g: DynamicGraph, window: int, scan: int | None = None) -> bool:
    """True iff every scanned length-``window`` round range keeps a
    connected spanning subgraph in the *intersection* of its edge sets.

    For recurring schedules, scanning prefix + one period of start
    positions is exhaustive and ``scan`` is ignored unless smaller.  For
    explicit schedules all windows that fit in the horizon are scanned
    (capped at ``scan`` start positions when given).
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if g.kind == EXPLICIT:
        last_start = len(g.rounds) - window + 1
        if last_start < 1:
            raise ScheduleRangeError(
                f"window {window} does not fit in horizon {len(g.rounds)}"
            )
    else:
        last_start = _scan_starts(g)
    if scan is not None:
        last_start = min(last_start, scan)
    for t in range(1, last_start + 1):
        common = g.instance(t)
        for i in range(t + 1, t + window):
            common = common & g.instance(i)
            if not common and g.n > 1:
                break
        if not is_connected(g.n, common):
            return False
    return True


def interval_compress(g: DynamicGraph, window: int) -> DynamicGraph:
    """Collapse every ``window`` consecutive rounds into one union round.

    The result G' satisfies instance(G', t) = window_union(G, (t-1)w+1, w).
    Periodicity carries over: a periodic schedule of period p compresses
    to period lcm(w, p)/w (= p/w when w divides p).  An explicit schedule
    truncates a trailing partial window; the number of dropped source
    rounds is recorded in ``truncated_rounds``.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if window == 1:
        return g

    def block(t: int) -> EdgeSet:
        return g.window_union((t - 1) * window + 1, window)

    if g.kind == EXPLICIT:
        blocks = len(g.rounds) // window
        if blocks < 1:
            raise ScheduleRangeError(
                f"window {window} exceeds explicit horizon {len(g.rounds)}"
            )
        compressed = DynamicGraph(
            g.n,
            EXPLICIT,
            tuple(block(t) for t in range(1, blocks + 1)),
            truncated_rounds=len(g.rounds) - blocks * window,
        )
        return compressed
    if g.kind == PERIODIC:
        p = len(g.rounds)
        new_p = math.lcm(window, p) // window
        return DynamicGraph(g.n, PERIODIC, tuple(block(t) for t in range(1, new_p + 1)))
    # Eventually periodic: blocks fully inside the tail repeat with
    # period lcm(w, p)/w; earlier blocks become the new prefix.
    p = len(g.rounds) - g.prefix
    new_prefix = -(-g.prefix // window)  # ceil
    new_p = math.lcm(window, p) // window
    blocks = tuple(block(t) for t in range(1, new_prefix + new_p + 1))
    return DynamicGraph(g.n, EVENTUALLY_PERIODIC, blocks, prefix=new_prefix)


# -- serialization -------------------------------------------------------


def graph_to_dict(g: DynamicGraph) -> dict:
    """JSON-ready dict in the canonical schedule format."""
    doc: dict = {"n": g.n, "kind": g.kind}
    if g.kind == EXPLICIT:
        doc["horizon"] = len(g.rounds)
    elif g.kind == PERIODIC:
        doc["period"] = len(g.rounds)
    else:
        doc["prefix"] = g.prefix
        doc["period"] = len(g.rounds) - g.prefix
    doc["rounds"] = [[list(e) for e in sorted_edges(r)] for r in g.rounds]
    return doc


def graph_from_dict(doc: dict) -> DynamicGraph:
    """Parse the canonical schedule dict, normalizing edge order and dupes."""
    if not isinstance(doc, dict):
        raise ScheduleParseError("schedule document must be a JSON object")
    for key in ("n", "kind", "rounds"):
        if key not in doc:
            raise ScheduleParseError(f"missing required field {key!r}")
    n = doc["n"]
    kind = doc["kind"]
    if not isinstance(n, int) or n < 1:
        raise ScheduleParseError(f"field 'n' must be a positive integer, got {n!r}")
    if kind not in _KINDS:
        raise ScheduleParseError(f"field 'kind' must be one of {_KINDS}, got {kind!r}")
    raw_rounds = doc["rounds"]
    if not isinstance(raw_rounds, list) or not raw_rounds:
        raise ScheduleParseError("field 'rounds' must be a nonempty list")
    rounds = []
    for i, raw in enumerate(raw_rounds):
        if not isinstance(raw, list):
            raise ScheduleParseError(f"round {i + 1} must be a list of edges")
        for pair in raw:
            if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, int) for x in pair)):
                raise ScheduleParseError(f"round {i + 1} edge {pair!r} must be a pair of integers")
        rounds.append(normalize_edges(n, raw, where=f"round {i + 1}", warn_duplicates=True))
    prefix = 0
    if kind == EXPLICIT:
        expected = doc.get("horizon", len(rounds))
        what = "horizon"
    elif kind == PERIODIC:
        expected = doc.get("period", len(rounds))
        what = "period"
    else:
        if "prefix" not in doc:
            raise ScheduleParseError("eventually_periodic schedules require 'prefix'")
        prefix = doc["prefix"]
        if not isinstance(prefix, int) or prefix < 0:
            raise ScheduleParseError(f"field 'prefix' must be a nonnegative integer, got {prefix!r}")
        expected = prefix + doc.get("period", len(rounds) - prefix)
        what = "prefix + period"
    if expected != len(rounds):
        raise ScheduleParseError(
            f"{what} = {expected} does not match {len(rounds)} stored rounds"
        )
    return DynamicGraph(n, kind, tuple(rounds), prefix=prefix)


def save_dynamic_graph(g: DynamicGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2)


def load_dynamic_graph(text: str) -> DynamicGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScheduleParseError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(doc)
