"""Command-line front end.

Subcommands: ``generate`` (emit a schedule), ``metrics`` (schedule ->
metric table), ``simulate`` (run a counting protocol, emit trace CSV and
summary JSON), ``check`` (influence property suite), ``explore``
(conjecture counterexample search), ``report`` (delimited data plus
rendered figures).

Exit codes: 0 on success, 1 when a property check fails / a simulation
miscounts / a counterexample is found, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .dynamic_graph import (
    DynamicGraph,
    ScheduleParseError,
    ScheduleRangeError,
    graph_to_dict,
    load_dynamic_graph,
)
from .explorer import (
    COUNTEREXAMPLE,
    EXHAUSTIVE,
    SearchBudget,
    check_conjecture1,
    property_suite,
    search_counterexample,
)
from .generators import (
    alternating_matchings_ring,
    complete_edges,
    from_static,
    oit_iit_gap_graph,
    random_oit1_graph,
    soifer,
    split_halves_graph,
)
from .influence import metrics_summary
from .local_windows import ModelViolationError, load_network
from .protocols import (
    ConsistencyProtocol,
    CoverCountProtocol,
    CtCountProtocol,
    OitCountProtocol,
    ProtocolPreconditionError,
    Trace,
    expected_consistency_outcome,
    run_sync,
)
from .report import metrics_to_json, write_report

FAMILIES = ("soifer", "alternating-ring", "oit-iit-gap", "split-halves", "static", "random-oit1")
PROTOCOLS = ("cover-count", "oit-count", "ct-count", "consistency")


class InputError(Exception):
    """Bad file, schema, or flag combination (exit code 2)."""


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _read_graph(path: str) -> DynamicGraph:
    try:
        return load_dynamic_graph(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"schedule file not found: {path}")
    except ScheduleParseError as exc:
        raise InputError(f"bad schedule in {path}: {exc}")


def _read_network(path: str):
    try:
        return load_network(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"cover network file not found: {path}")
    except (ValueError, KeyError) as exc:
        raise InputError(f"bad cover network in {path}: {exc}")


def _cmd_generate(args: argparse.Namespace) -> int:
    n = args.n
    try:
        if args.family == "soifer":
            g = soifer(n)
        elif args.family == "alternating-ring":
            g = alternating_matchings_ring(n)
        elif args.family == "oit-iit-gap":
            g = oit_iit_gap_graph(n, args.k)
        elif args.family == "split-halves":
            g = split_halves_graph(n)
        elif args.family == "static":
            g = from_static(n, complete_edges(n))
        else:
            g = random_oit1_graph(n, args.horizon, args.seed)
    except ValueError as exc:
        raise InputError(str(exc))
    _emit(json.dumps(graph_to_dict(g), indent=2), args.out)
    return 0


def _cmd_metrics(args: argparse.Namespace) -> int:
    g = _read_graph(args.infile)
    kmax = args.kmax if args.kmax else 4 * g.n
    summary = metrics_summary(g, kmax)
    _emit(json.dumps(metrics_to_json(summary), indent=2), args.out)
    return 0


def _build_protocol(args: argparse.Namespace, g: DynamicGraph):
    if args.proto == "cover-count":
        if not args.net:
            raise InputError("--proto cover-count requires --net")
        net = _read_network(args.net)
        return CoverCountProtocol(net), net.n
    if args.proto == "oit-count":
        if args.param is None:
            raise InputError("--proto oit-count requires --param (the shared growth bound k)")
        return OitCountProtocol(args.param), g.n
    if args.proto == "ct-count":
        if args.param is None:
            raise InputError("--proto ct-count requires --param (the shared window bound T)")
        return CtCountProtocol(args.param), g.n
    if not args.net:
        raise InputError("--proto consistency requires --net")
    net = _read_network(args.net)
    if args.bounds:
        try:
            bounds = tuple(int(x) for x in args.bounds.split(","))
        except ValueError:
            raise InputError(f"--bounds must be a comma-separated integer list, got {args.bounds!r}")
    else:
        bounds = net.cover
    try:
        return ConsistencyProtocol(net, bounds), net.n
    except ValueError as exc:
        raise InputError(str(exc))


def _write_trace_csv(trace: Trace, path: str) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["round", "uid", "heard_count", "msg_entries", "halted", "output"])
        for row in trace.rows:
            writer.writerow([
                row.round, row.uid, row.heard_count, row.msg_entries,
                int(row.halted), "" if row.output is None else row.output,
            ])


def _cmd_simulate(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    proto, n_expected = _build_protocol(args, g)
    if g.n != n_expected:
        raise InputError(f"schedule has {g.n} nodes but the protocol inputs describe {n_expected}")
    try:
        trace = run_sync(g, proto, args.max_rounds)
    except (ProtocolPreconditionError, ModelViolationError) as exc:
        raise InputError(f"model precondition failed: {exc}")
    if args.proto == "consistency":
        expected = expected_consistency_outcome(proto.net, proto.bounds)
        all_correct = not trace.timed_out and all(
            trace.outputs[u] == expected[u][0]
            and trace.details[u]["accepted"] == expected[u][1]
            for u in expected
        )
    else:
        all_correct = trace.all_outputs_equal(g.n)
    if args.trace:
        _write_trace_csv(trace, args.trace)
    summary = {
        "all_correct": all_correct,
        "max_halt_round": trace.max_halt_round,
        "max_msg_entries": trace.max_msg_entries,
        "timed_out": trace.timed_out,
    }
    _emit(json.dumps(summary, indent=2), args.summary)
    return 0 if all_correct else 1


def _cmd_check(args: argparse.Namespace) -> int:
    g = _read_graph(args.infile)
    report = property_suite(g, args.kmax if args.kmax else None)
    doc = {
        "passed": report.passed,
        "checks": [
            {
                "name": c.name,
                "status": c.status,
                "detail": c.detail,
                "witness": list(c.witness) if c.witness else None,
            }
            for c in report.checks
        ],
    }
    _emit(json.dumps(doc, indent=2), args.out)
    return 0 if report.passed else 1


def _cmd_explore(args: argparse.Namespace) -> int:
    try:
        budget = SearchBudget(args.n, args.horizon, args.mode, trials=args.trials, seed=args.seed)
        found = search_counterexample(budget)
    except ValueError as exc:
        raise InputError(str(exc))
    doc: dict = {
        "status": "none" if found is None else COUNTEREXAMPLE,
        "scanned": {
            "n": budget.n,
            "horizon": budget.horizon,
            "mode": budget.mode,
            "trials": budget.trials if budget.mode == "randomized" else None,
        },
    }
    if found is not None:
        g, t = found
        doc["t"] = t
        doc["witness"] = graph_to_dict(g)
    _emit(json.dumps(doc, indent=2), args.out)
    return 0 if found is None else 1


def _cmd_report(args: argparse.Namespace) -> int:
    g = _read_graph(args.infile)
    files = write_report(g, args.out_dir, args.kmax if args.kmax else None)
    for f in files:
        print(f)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynnetlab",
        description="Dynamic-network laboratory: schedules, influence metrics, protocols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a schedule from one of the built-in families")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True, help="node count")
    p.add_argument("--k", type=int, default=1, help="gap parameter (oit-iit-gap only)")
    p.add_argument("--horizon", type=int, default=24, help="rounds to sample (random-oit1 only)")
    p.add_argument("--seed", type=int, default=0, help="sampler seed (random-oit1 only)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("metrics", help="compute the six schedule metrics")
    p.add_argument("--in", dest="infile", required=True, help="schedule JSON path")
    p.add_argument("--kmax", type=int, default=0, help="metric search bound (default 4n)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("simulate", help="run a counting protocol on a schedule")
    p.add_argument("--proto", required=True, choices=PROTOCOLS)
    p.add_argument("--graph", required=True, help="schedule JSON path")
    p.add_argument("--net", help="cover network JSON path (cover-count, consistency)")
    p.add_argument("--param", type=int, help="shared bound: k for oit-count, T for ct-count")
    p.add_argument("--bounds", help="comma-separated claimed cover bounds (consistency)")
    p.add_argument("--max-rounds", type=int, default=None,
                   help="round budget (default: the protocol's liveness bound)")
    p.add_argument("--trace", help="write the per-round trace CSV here")
    p.add_argument("--summary", help="summary JSON path (default: stdout)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("check", help="run the influence property suite on a schedule")
    p.add_argument("--in", dest="infile", required=True, help="schedule JSON path")
    p.add_argument("--kmax", type=int, default=0, help="metric search bound (default 4n)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("explore", help="search for full-spread conjecture counterexamples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--mode", choices=(EXHAUSTIVE, "randomized"), default=EXHAUSTIVE)
    p.add_argument("--trials", type=int, default=1000, help="samples (randomized mode)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("report", help="write CSV data and rendered figures for a schedule")
    p.add_argument("--in", dest="infile", required=True, help="schedule JSON path")
    p.add_argument("--out-dir", required=True, help="directory for the report files")
    p.add_argument("--kmax", type=int, default=0, help="metric search bound (default 4n)")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ScheduleRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
