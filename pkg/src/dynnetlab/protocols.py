"""Synchronous round simulator and the node-local counting procedures.

The engine runs lock-step rounds: every node emits one broadcast message,
messages are delivered to whoever is adjacent in that round's instance,
all nodes update state, and each un-halted node then evaluates its halt
predicate.  Runs are deterministic functions of (graph, protocol); each
run is single-threaded and keeps no global state, so independent runs
can execute concurrently.

Halted nodes freeze their state and output but keep re-broadcasting the
frozen message.  The counting procedures here are relay-based: their
correctness arguments assume information keeps flowing through nodes that
already know the answer, and a node that went silent after halting could
starve a slower neighbor into a wrong count.  Re-broadcast preserves the
full-information reading (a flooding node's known set always equals its
causal past) at no asymptotic message cost.

Four protocols are provided:

* :class:`CoverCountProtocol` -- each node knows its own cover time;
  halt when the round number equals the summed cover times of everyone
  heard from (the cover-sum clock guarantees any missing node would have
  reported by then).
* :class:`OitCountProtocol` -- shared bound k on the outgoing influence
  time; flood known-node sets and halt once l = |known| has been stable
  for k*l*(l+1)/2 - 1 rounds.
* :class:`CtCountProtocol` -- shared bound T on the connectivity time;
  flood vectors of latest-influence timestamps and halt at round >= T
  once every known node's timestamp reaches T.
* :class:`ConsistencyProtocol` -- each node broadcasts its claimed cover
  bound for that many rounds, then accepts if some neighbor's claim is
  at least its own and otherwise adopts the neighborhood maximum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Protocol

from .dynamic_graph import DynamicGraph
from .influence import compute_ct, compute_oit
from .local_windows import CoverNetwork, ModelViolationError, respects


class ProtocolPreconditionError(ValueError):
    """The graph does not satisfy the protocol's model assumptions."""


class ProtocolIntegrityError(RuntimeError):
    """A state invariant that honest executions cannot break was broken."""


@dataclass
class TraceRow:
    round: int
    uid: int
    heard_count: int
    msg_entries: int
    halted: bool
    output: int | None


@dataclass
class Trace:
    """Per-round, per-node record of one simulation run."""

    rows: list[TraceRow] = field(default_factory=list)
    outputs: dict[int, int | None] = field(default_factory=dict)
    halt_round: dict[int, int] = field(default_factory=dict)
    details: dict[int, dict[str, Any]] = field(default_factory=dict)
    rounds_run: int = 0
    timed_out: bool = False

    @property
    def all_halted(self) -> bool:
        return not self.timed_out

    @property
    def max_halt_round(self) -> int:
        return max(self.halt_round.values(), default=0)

    @property
    def max_msg_entries(self) -> int:
        return max((row.msg_entries for row in self.rows), default=0)

    def all_outputs_equal(self, expected: int) -> bool:
        return not self.timed_out and all(v == expected for v in self.outputs.values())

    def node_rows(self, uid: int) -> list[TraceRow]:
        return [row for row in self.rows if row.uid == uid]


class NodeProtocol(Protocol):
    """Node-local transition functions driven by the engine."""

    name: str

    def check_model(self, g: DynamicGraph) -> None: ...

    def init_state(self, uid: int) -> dict: ...

    def message(self, state: dict, round_no: int) -> Any: ...

    def receive(self, state: dict, inbox: list[tuple[int, Any]], round_no: int) -> None: ...

    def should_halt(self, state: dict, round_no: int) -> bool: ...

    def output(self, state: dict) -> int: ...

    def heard_count(self, state: dict) -> int: ...

    def entry_count(self, payload: Any) -> int: ...

    def detail(self, state: dict) -> dict[str, Any]:
        return {}


def default_max_rounds(proto: NodeProtocol, g: DynamicGraph) -> int:
    """Liveness budgets: generous multiples of each protocol's halting bound."""
    if isinstance(proto, CoverCountProtocol):
        return 4 * sum(proto.net.cover)
    if isinstance(proto, OitCountProtocol):
        return 4 * proto.k * g.n * g.n
    if isinstance(proto, CtCountProtocol):
        return 4 * (proto.bound + g.n * proto.bound)
    if isinstance(proto, ConsistencyProtocol):
        return 4 * sum(proto.bounds)
    return 4 * g.n * g.n


def run_sync(
    g: DynamicGraph,
    proto: NodeProtocol,
    max_rounds: int | None = None,
    *,
    check_model: bool = True,
) -> Trace:
    """Run ``proto`` on every node of ``g`` until all halt or the budget ends.

    Returns a timeout trace (``timed_out=True``, partial outputs) rather
    than raising when un-halted nodes remain at ``max_rounds`` or when an
    explicit schedule runs out of rounds.
    """
    if check_model:
        proto.check_model(g)
    if max_rounds is None:
        max_rounds = default_max_rounds(proto, g)
    nodes = range(1, g.n + 1)
    states = {u: proto.init_state(u) for u in nodes}
    trace = Trace()
    halted: dict[int, bool] = {u: False for u in nodes}
    for r in range(1, max_rounds + 1):
        if not g.round_defined(r):
            trace.timed_out = True
            break
        edges = g.instance(r)
        # Halted nodes re-broadcast from their frozen state (message() is
        # pure, receive/should_halt are skipped once halted).
        outbox = {u: proto.message(states[u], r) for u in nodes}
        inbox: dict[int, list[tuple[int, Any]]] = {u: [] for u in nodes}
        for u, v in edges:
            if outbox[v] is not None:
                inbox[u].append((v, outbox[v]))
            if outbox[u] is not None:
                inbox[v].append((u, outbox[u]))
        for u in nodes:
            if not halted[u]:
                proto.receive(states[u], inbox[u], r)
        for u in nodes:
            if not halted[u] and proto.should_halt(states[u], r):
                halted[u] = True
                trace.halt_round[u] = r
                trace.outputs[u] = proto.output(states[u])
                trace.details[u] = proto.detail(states[u])
        for u in nodes:
            trace.rows.append(
                TraceRow(
                    round=r,
                    uid=u,
                    heard_count=proto.heard_count(states[u]),
                    msg_entries=proto.entry_count(outbox[u]),
                    halted=halted[u],
                    output=trace.outputs.get(u),
                )
            )
        trace.rounds_run = r
        if all(halted.values()):
            break
    else:
        trace.timed_out = True
    if not all(halted.values()):
        trace.timed_out = True
    for u in nodes:
        trace.outputs.setdefault(u, None)
    return trace


# -- cover-sum counting ----------------------------------------------------


@dataclass
class CoverCountProtocol:
    """Counting under known own cover times on a respecting schedule."""

    net: CoverNetwork
    name: str = "cover-count"

    def check_model(self, g: DynamicGraph) -> None:
        try:
            ok = respects(g, self.net)
        except ModelViolationError as exc:
            raise ProtocolPreconditionError(str(exc)) from exc
        if not ok:
            raise ProtocolPreconditionError(
                "schedule does not respect the cover-time vector"
            )

    def init_state(self, uid: int) -> dict:
        return {"uid": uid, "known": {uid: self.net.cover_of(uid)}}

    def message(self, state: dict, round_no: int) -> dict[int, int]:
        return dict(state["known"])

    def receive(self, state: dict, inbox: list[tuple[int, Any]], round_no: int) -> None:
        known = state["known"]
        for _, payload in inbox:
            for uid, cover in payload.items():
                if uid in known:
                    if known[uid] != cover:
                        raise ProtocolIntegrityError(
                            f"conflicting cover times for node {uid}: "
                            f"{known[uid]} vs {cover}"
                        )
                else:
                    known[uid] = cover
    def should_halt(self, state: dict, round_no: int) -> bool:
        return round_no == sum(state["known"].values())

    def output(self, state: dict) -> int:
        return len(state["known"])

    def heard_count(self, state: dict) -> int:
        return len(state["known"])

    def detail(self, state: dict) -> dict[str, Any]:
        return {}

    def entry_count(self, payload: dict[int, int] | None) -> int:
        # UID entries and cover entries come in pairs; report the pair count.
        return 0 if payload is None else len(payload)


# -- flooding counter under an outgoing-influence bound ---------------------


@dataclass
class OitCountProtocol:
    """Counting under a shared bound k on the outgoing influence time.

    Full-information flooding: the known set always equals the node's
    causal past.  With l nodes known and no growth for k*l*(l+1)/2 - 1
    rounds, the influence bound implies nobody is missing, so halt.  (At
    l = 1 the budget is k - 1 rounds, zero for k = 1: a node isolated
    forever would halt immediately with output 1, a situation the model
    precondition excludes.)
    """

    k: int
    name: str = "oit-count"

    def check_model(self, g: DynamicGraph) -> None:
        verdict = compute_oit(g, self.k)
        if verdict.value is None or verdict.value > self.k:
            raise ProtocolPreconditionError(
                f"graph's outgoing influence time exceeds the shared bound {self.k}"
            )

    def init_state(self, uid: int) -> dict:
        return {"uid": uid, "known": {uid}, "last_growth": 0}

    def message(self, state: dict, round_no: int) -> frozenset[int]:
        return frozenset(state["known"])

    def receive(self, state: dict, inbox: list[tuple[int, Any]], round_no: int) -> None:
        known: set[int] = state["known"]
        before = len(known)
        for _, payload in inbox:
            known |= payload
        if len(known) > before:
            state["last_growth"] = round_no

    def waiting_budget(self, count: int) -> int:
        return self.k * count * (count + 1) // 2 - 1

    def should_halt(self, state: dict, round_no: int) -> bool:
        quiet = round_no - state["last_growth"]
        return quiet >= self.waiting_budget(len(state["known"]))

    def output(self, state: dict) -> int:
        return len(state["known"])

    def heard_count(self, state: dict) -> int:
        return len(state["known"])

    def detail(self, state: dict) -> dict[str, Any]:
        return {}

    def entry_count(self, payload: frozenset[int] | None) -> int:
        return 0 if payload is None else len(payload)


# -- timestamp counter under a connectivity-time bound ----------------------


@dataclass
class CtCountProtocol:
    """Counting under a shared bound T on the connectivity time.

    Every node floods a vector of latest-influence timestamps:
    latest[v] is the greatest s with v's s-state reaching this node by
    the current round.  Once every known node's timestamp is at least T
    (only checkable from round T on), anyone still unknown would have had
    to show up within the last T rounds, so the known set is everyone.
    """

    bound: int
    name: str = "ct-count"

    def check_model(self, g: DynamicGraph) -> None:
        verdict = compute_ct(g, self.bound)
        if verdict.value is None or verdict.value > self.bound:
            raise ProtocolPreconditionError(
                f"graph's connectivity time exceeds the shared bound {self.bound}"
            )

    def init_state(self, uid: int) -> dict:
        return {"uid": uid, "latest": {uid: 0}}

    def message(self, state: dict, round_no: int) -> dict[int, int]:
        return dict(state["latest"])

    def receive(self, state: dict, inbox: list[tuple[int, Any]], round_no: int) -> None:
        latest: dict[int, int] = state["latest"]
        for _, payload in inbox:
            for v, stamp in payload.items():
                if latest.get(v, -1) < stamp:
                    latest[v] = stamp
        latest[state["uid"]] = round_no

    def should_halt(self, state: dict, round_no: int) -> bool:
        if round_no < self.bound:
            return False
        return all(stamp >= self.bound for stamp in state["latest"].values())

    def output(self, state: dict) -> int:
        return len(state["latest"])

    def heard_count(self, state: dict) -> int:
        return len(state["latest"])

    def detail(self, state: dict) -> dict[str, Any]:
        return {}

    def entry_count(self, payload: dict[int, int] | None) -> int:
        return 0 if payload is None else len(payload)


# -- one-step cover-bound consistency check ---------------------------------


@dataclass
class ConsistencyProtocol:
    """One-step repair of claimed cover-time upper bounds.

    Node u broadcasts its claim C_u during rounds 1..C_u and waits for a
    claim from every static neighbor.  If some neighbor claims at least
    C_u the claim is consistent (accept); otherwise u lowers its claim to
    the neighborhood maximum (fixed).  Requires knowledge of N(u), which
    the neighborhood-maximum rule presupposes.
    """

    net: CoverNetwork
    bounds: tuple[int, ...]
    name: str = "consistency"

    def __post_init__(self) -> None:
        if len(self.bounds) != self.net.n:
            raise ValueError("one claimed bound per node is required")
        for u in range(1, self.net.n + 1):
            if self.bounds[u - 1] < self.net.cover_of(u):
                raise ValueError(
                    f"claimed bound of node {u} is below its true cover time"
                )

    def check_model(self, g: DynamicGraph) -> None:
        try:
            ok = respects(g, self.net)
        except ModelViolationError as exc:
            raise ProtocolPreconditionError(str(exc)) from exc
        if not ok:
            raise ProtocolPreconditionError(
                "schedule does not respect the cover-time vector"
            )

    def init_state(self, uid: int) -> dict:
        return {
            "uid": uid,
            "claim": self.bounds[uid - 1],
            "received": {},
            "neighbors": self.net.neighbors(uid),
        }

    def message(self, state: dict, round_no: int) -> int | None:
        return state["claim"] if round_no <= self.bounds[state["uid"] - 1] else None

    def receive(self, state: dict, inbox: list[tuple[int, Any]], round_no: int) -> None:
        for sender, claim in inbox:
            state["received"][sender] = claim

    def should_halt(self, state: dict, round_no: int) -> bool:
        # Keep the broadcast duty through round C_u even if all neighbor
        # claims arrived earlier.
        if round_no < self.bounds[state["uid"] - 1]:
            return False
        if set(state["received"]) < state["neighbors"]:
            return False
        claims = state["received"]
        own = state["claim"]
        if any(claims[v] >= own for v in state["neighbors"]):
            state["accepted"] = True
        else:
            state["accepted"] = False
            state["claim"] = max(claims[v] for v in state["neighbors"])
        return True

    def output(self, state: dict) -> int:
        return state["claim"]

    def heard_count(self, state: dict) -> int:
        return len(state["received"]) + 1

    def detail(self, state: dict) -> dict[str, Any]:
        return {"accepted": state.get("accepted")}

    def entry_count(self, payload: int | None) -> int:
        return 0 if payload is None else 1


def expected_consistency_outcome(net: CoverNetwork, bounds: tuple[int, ...]) -> dict[int, tuple[int, bool]]:
    """Offline evaluation of the one-step consistency repair, for checking
    simulation outputs: uid -> (final claim, accepted flag)."""
    out = {}
    for u in range(1, net.n + 1):
        own = bounds[u - 1]
        neighbor_claims = [bounds[v - 1] for v in net.neighbors(u)]
        if any(c >= own for c in neighbor_claims):
            out[u] = (own, True)
        else:
            out[u] = (max(neighbor_claims), False)
    return out
