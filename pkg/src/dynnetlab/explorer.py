"""Full-spread conjecture checking and bounded counterexample search.

The conjecture under test: in a schedule whose influence cones grow every
round (unit outgoing influence time), every start time t should have some
node whose cone covers all n nodes within floor(n/2) further rounds.
``check_conjecture1`` evaluates that on a given schedule;
``search_counterexample`` hunts for violating schedules, either
exhaustively over all explicit schedules of a small size or by sampling.

The exhaustive search walks schedules round by round.  A prefix is pruned
as soon as any influence cone fails to grow (equivalently: some round
leaves a node uncovered, breaking the minimum-edge floor, or misses a cut
of a still-spreading cone), because such a stall can never be repaired
later.  States that provably admit no violating completion are memoized,
which keeps the walk exact while collapsing the bulk of the tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .dynamic_graph import DynamicGraph, is_connected
from .generators import random_oit1_graph
from .influence import compute_ct, compute_iit, compute_oit, compute_moi, future_set

HOLDS = "holds"
COUNTEREXAMPLE = "counterexample"
NOT_APPLICABLE = "not_applicable"

EXHAUSTIVE = "exhaustive"
RANDOMIZED = "randomized"

_EXHAUSTIVE_MAX_N = 5  # the candidate lattice is 2^C(n,2) per round


@dataclass(frozen=True)
class ConjectureVerdict:
    """Outcome of one conjecture check.

    ``scanned`` is the inclusive range of start times actually checked;
    on explicit schedules the verdict is scoped to that range.  A
    counterexample verdict carries the replayable graph and the first
    violating start time.
    """

    status: str
    scanned: tuple[int, int]
    t: int | None = None
    witness: DynamicGraph | None = None
    reason: str | None = None

    @property
    def holds(self) -> bool:
        return self.status == HOLDS


@dataclass(frozen=True)
class SearchBudget:
    """Bounds for the counterexample search.

    Exhaustive mode is feasible only for n <= 5; randomized mode draws
    ``trials`` schedules from the unit-growth sampler, deterministically
    in ``seed``.
    """

    n: int
    horizon: int
    mode: str = EXHAUSTIVE
    trials: int = 1000
    seed: int = 0
    prune: bool = True

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"search needs n >= 3, got {self.n}")
        if self.horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {self.horizon}")
        if self.mode not in (EXHAUSTIVE, RANDOMIZED):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.mode == EXHAUSTIVE and self.n > _EXHAUSTIVE_MAX_N:
            raise ValueError(
                f"exhaustive search is only feasible for n <= {_EXHAUSTIVE_MAX_N}, got {self.n}"
            )
        if self.mode == RANDOMIZED and self.trials < 1:
            raise ValueError(f"randomized search needs trials >= 1, got {self.trials}")


def check_conjecture1(g: DynamicGraph, k_max: int | None = None) -> ConjectureVerdict:
    """Does some node fully spread within floor(n/2) rounds of every
    scanned start time?

    Not applicable unless the schedule's outgoing influence time computes
    to 1 (exactly for recurring schedules, witnessed over the horizon for
    explicit ones).  Recurring schedules scan start times over the prefix
    plus one period, which is exhaustive; explicit ones scan every start
    whose window fits the horizon.
    """
    if k_max is None:
        k_max = max(4 * g.n, 4)
    oit = compute_oit(g, k_max)
    if oit.value != 1:
        shown = "unbounded" if oit.is_unbounded else str(oit.value)
        return ConjectureVerdict(
            NOT_APPLICABLE,
            scanned=(0, -1),
            reason=f"outgoing influence time is {shown}, not 1",
        )
    spread = g.n // 2
    if g.kind == "explicit":
        last_t = len(g.rounds) - spread
        if last_t < 0:
            return ConjectureVerdict(HOLDS, scanned=(0, -1),
                                     reason="no spread window fits the horizon")
    else:
        last_t = len(g.rounds) - 1  # prefix + one period of start times
    for t in range(0, last_t + 1):
        if not any(
            len(future_set(g, u, t, t + spread)) == g.n for u in range(1, g.n + 1)
        ):
            return ConjectureVerdict(COUNTEREXAMPLE, scanned=(0, last_t), t=t, witness=g)
    return ConjectureVerdict(HOLDS, scanned=(0, last_t))


# -- exhaustive search over explicit schedules -------------------------------


class _Lattice:
    """Bitmask machinery for one node count: candidate rounds, cone
    evolution, cut crossing, and spread windows."""

    def __init__(self, n: int):
        self.n = n
        self.full = (1 << n) - 1
        self.edges = list(combinations(range(n), 2))
        self.edge_bits = [(1 << a) | (1 << b) for a, b in self.edges]
        # Candidate instances: every subset of edges covering all nodes.
        self.candidates = self._covering_masks()
        self._grow_memo: dict[tuple[int, int], int] = {}
        self._window_memo: dict[tuple[int, ...], bool] = {}

    def _covering_masks(self) -> list[int]:
        out = []
        for mask in range(1, 1 << len(self.edges)):
            cover = 0
            m = mask
            idx = 0
            while m:
                if m & 1:
                    cover |= self.edge_bits[idx]
                m >>= 1
                idx += 1
            if cover == self.full:
                out.append(mask)
        return out

    def grow(self, members: int, edge_mask: int) -> int:
        key = (members, edge_mask)
        got = self._grow_memo.get(key)
        if got is not None:
            return got
        grown = members
        m = edge_mask
        idx = 0
        while m:
            if m & 1:
                a, b = self.edges[idx]
                if members >> a & 1:
                    grown |= 1 << b
                if members >> b & 1:
                    grown |= 1 << a
            m >>= 1
            idx += 1
        self._grow_memo[key] = grown
        return grown

    def crosses_all(self, edge_mask: int, live: frozenset[int]) -> bool:
        return all(self.grow(s, edge_mask) != s for s in live)

    def evolve(self, live: frozenset[int], edge_mask: int) -> frozenset[int]:
        nxt = {1 << u for u in range(self.n)}
        for s in live:
            grown = self.grow(s, edge_mask)
            if grown != self.full:
                nxt.add(grown)
        return frozenset(nxt)

    def window_blocks_everyone(self, window: tuple[int, ...]) -> bool:
        """True iff no node spreads to everyone across these rounds."""
        got = self._window_memo.get(window)
        if got is not None:
            return got
        blocked = True
        for u in range(self.n):
            s = 1 << u
            for edge_mask in window:
                s = self.grow(s, edge_mask)
            if s == self.full:
                blocked = False
                break
        self._window_memo[window] = blocked
        return blocked

    def to_edges(self, mask: int) -> list[tuple[int, int]]:
        out = []
        idx = 0
        while mask:
            if mask & 1:
                a, b = self.edges[idx]
                out.append((a + 1, b + 1))
            mask >>= 1
            idx += 1
        return out


def _initial_live(n: int) -> frozenset[int]:
    return frozenset(1 << u for u in range(n))


def _search_exhaustive(budget: SearchBudget) -> tuple[DynamicGraph, int] | None:
    lat = _Lattice(budget.n)
    spread = budget.n // 2
    horizon = budget.horizon
    hopeless: set[tuple[int, frozenset[int], tuple[int, ...]]] = set()

    def complete_any(r: int, live: frozenset[int]) -> list[int] | None:
        if r == horizon:
            return []
        for cand in lat.candidates:
            if not lat.crosses_all(cand, live):
                continue
            rest = complete_any(r + 1, lat.evolve(live, cand))
            if rest is not None:
                return [cand] + rest
        return None

    def dfs(r: int, live: frozenset[int], recent: tuple[int, ...]) -> list[int] | None:
        key = (r, live, recent)
        if key in hopeless:
            return None
        for cand in lat.candidates:
            if not lat.crosses_all(cand, live):
                continue
            window = recent + (cand,)
            new_live = lat.evolve(live, cand)
            if r + 1 >= spread and lat.window_blocks_everyone(window[-spread:]):
                tail = complete_any(r + 1, new_live)
                if tail is not None:
                    return [cand] + tail
            if r + 1 < horizon:
                sub = dfs(r + 1, new_live, window[-(spread - 1):] if spread > 1 else ())
                if sub is not None:
                    return [cand] + sub
        hopeless.add(key)
        return None

    chosen = dfs(0, _initial_live(budget.n), ())
    if chosen is None:
        return None
    g = DynamicGraph.explicit(budget.n, [lat.to_edges(mask) for mask in chosen])
    verdict = check_conjecture1(g)
    if verdict.status != COUNTEREXAMPLE:
        raise RuntimeError("search produced a schedule that does not replay")
    return g, verdict.t


def _search_randomized(budget: SearchBudget) -> tuple[DynamicGraph, int] | None:
    for trial in range(budget.trials):
        g = random_oit1_graph(budget.n, budget.horizon, budget.seed + trial)
        verdict = check_conjecture1(g)
        if verdict.status == COUNTEREXAMPLE:
            return g, verdict.t
    return None


def search_counterexample(budget: SearchBudget) -> tuple[DynamicGraph, int] | None:
    """First conjecture-violating schedule within the budget, or None.

    Deterministic given the budget: exhaustive mode walks candidate
    rounds in a fixed canonical order (``prune=False`` selects the plain
    reference enumeration instead of the pruned, memoized walk),
    randomized mode derives one seed per trial from the budget seed.
    """
    if budget.mode == EXHAUSTIVE:
        if not budget.prune:
            return search_unpruned(budget)
        return _search_exhaustive(budget)
    return _search_randomized(budget)


def search_unpruned(budget: SearchBudget) -> tuple[DynamicGraph, int] | None:
    """Reference search without prefix pruning or memoization: enumerate
    every sequence of covering instances, keep those with witnessed unit
    growth, and test the conjecture on each.  Exponentially slower than
    :func:`search_counterexample`; exists as its soundness oracle."""
    lat = _Lattice(budget.n)

    def all_schedules(r: int, chosen: list[int]):
        if r == budget.horizon:
            yield list(chosen)
            return
        for cand in lat.candidates:
            chosen.append(cand)
            yield from all_schedules(r + 1, chosen)
            chosen.pop()

    for masks in all_schedules(0, []):
        g = DynamicGraph.explicit(budget.n, [lat.to_edges(m) for m in masks])
        if compute_oit(g, 1).value != 1:
            continue
        verdict = check_conjecture1(g)
        if verdict.status == COUNTEREXAMPLE:
            return g, verdict.t
    return None


# -- influence property suite -------------------------------------------------

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    status: str
    detail: str
    witness: tuple | None = None


@dataclass(frozen=True)
class PropertyReport:
    checks: tuple[PropertyCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def by_name(self, name: str) -> PropertyCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _window_starts(g: DynamicGraph, length: int) -> range:
    if g.kind == "explicit":
        return range(1, len(g.rounds) - length + 2)
    return range(1, len(g.rounds) + 1)


def property_suite(g: DynamicGraph, k_max: int | None = None) -> PropertyReport:
    """Evaluate the influence-theory predicates applicable to ``g``.

    Four checks: the minimum-edge floor of influence windows, the
    double-influence bound for unit-growth schedules, connectivity of
    influence-time-scaled windows, and the ordering of influence time
    versus connectivity time.  Each reports pass / fail / not_applicable
    plus a witness for failures.  Pure and order-independent.
    """
    if k_max is None:
        k_max = max(4 * g.n, 4)
    oit = compute_oit(g, k_max)
    iit = compute_iit(g, k_max)
    ct = compute_ct(g, k_max)
    checks: list[PropertyCheck] = []
    floor = -(-g.n // 2)  # ceil(n/2)

    if oit.value is None:
        checks.append(PropertyCheck(
            "window-edge-floor", NOT_APPLICABLE,
            "outgoing influence time is unbounded"))
    else:
        bad = next(
            (t for t in _window_starts(g, oit.value)
             if len(g.window_union(t, oit.value)) < floor),
            None,
        )
        if bad is None:
            checks.append(PropertyCheck(
                "window-edge-floor", PASS,
                f"every {oit.value}-round window carries >= {floor} edges"))
        else:
            checks.append(PropertyCheck(
                "window-edge-floor", FAIL,
                f"window at round {bad} carries fewer than {floor} edges",
                witness=(bad, oit.value)))

    if oit.value == 1 and g.n >= 3:
        moi = compute_moi(g)
        if moi.value is not None and moi.value >= 2:
            checks.append(PropertyCheck(
                "double-influence", PASS,
                f"max single-round influence jump is {moi.value}"))
        else:
            checks.append(PropertyCheck(
                "double-influence", FAIL,
                f"max single-round influence jump is {moi.value}",
                witness=moi.witness))
    else:
        checks.append(PropertyCheck(
            "double-influence", NOT_APPLICABLE,
            "requires unit outgoing influence time and n >= 3"))

    times = [v for v in (oit.value, iit.value) if v is not None]
    if not times:
        checks.append(PropertyCheck(
            "influence-window-connectivity", NOT_APPLICABLE,
            "both influence times are unbounded"))
    else:
        k = min(times)
        length = k * (g.n // 2)
        starts = _window_starts(g, length)
        if len(starts) == 0:
            checks.append(PropertyCheck(
                "influence-window-connectivity", NOT_APPLICABLE,
                f"window of {length} rounds does not fit the horizon"))
        else:
            bad = next(
                (t for t in starts if not is_connected(g.n, g.window_union(t, length))),
                None,
            )
            if bad is None:
                checks.append(PropertyCheck(
                    "influence-window-connectivity", PASS,
                    f"every {length}-round window union is connected"))
            else:
                checks.append(PropertyCheck(
                    "influence-window-connectivity", FAIL,
                    f"window union at round {bad} is disconnected",
                    witness=(bad, length)))

    oit_v = oit.value if oit.value is not None else float("inf")
    ct_v = ct.value if ct.value is not None else float("inf")
    if oit_v <= ct_v:
        checks.append(PropertyCheck(
            "influence-before-connectivity", PASS,
            f"outgoing influence time {oit_v} <= connectivity time {ct_v}"))
    else:
        checks.append(PropertyCheck(
            "influence-before-connectivity", FAIL,
            f"outgoing influence time {oit_v} > connectivity time {ct_v}",
            witness=(oit.value, ct.value)))

    return PropertyReport(tuple(checks))
