"""Schedule reports: delimited data files plus rendered figures.

``write_report`` takes one schedule and emits, side by side in an output
directory, machine-readable CSV/JSON and matplotlib renderings of the
same data: the metric table, per-node influence growth curves, the edge
activity raster, and the window-connectivity profile.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .dynamic_graph import DynamicGraph, is_connected, sorted_edges
from .influence import MetricResult, metrics_summary

METRIC_ORDER = ("oit", "iit", "moi", "ct", "edge_period", "dynamic_diameter")


def metric_to_json(m: MetricResult) -> dict:
    return {
        "value": "unbounded" if m.value is None else m.value,
        "exact": m.exact,
        "witness": list(m.witness) if m.witness else None,
    }


def metrics_to_json(summary: dict[str, MetricResult]) -> dict:
    return {name: metric_to_json(summary[name]) for name in METRIC_ORDER}


def _display_rounds(g: DynamicGraph, cap: int = 48) -> int:
    if g.kind == "explicit":
        return min(len(g.rounds), cap)
    prefix = g.prefix if g.kind == "eventually_periodic" else 0
    period = len(g.rounds) - prefix
    return min(prefix + 2 * period, cap)

def _growth_rows(g: DynamicGraph) -> list[tuple[int, int, int]]:
    """(node, delay, cone size) for every node's spread from time 0."""
    rows = []
    cap = _display_rounds(g, cap=12 * g.n)
    for u in range(1, g.n + 1):
        members = {u}
        rows.append((u, 0, 1))
        for j in range(1, cap + 1):
            grown = set(members)
            for a, b in g.instance(j):
                if a in members:
                    grown.add(b)
                if b in members:
                    grown.add(a)
            members = grown
            rows.append((u, j, len(members)))
            if len(members) == g.n:
                break
    return rows


def _connectivity_rows(g: DynamicGraph, k_cap: int) -> list[tuple[int, float]]:
    rows = []
    for k in range(1, k_cap + 1):
        if g.kind == "explicit":
            starts = range(1, len(g.rounds) - k + 2)
        else:
            starts = range(1, len(g.rounds) + 1)
        if len(starts) == 0:
            break
        good = sum(1 for t in starts if is_connected(g.n, g.window_union(t, k)))
        rows.append((k, good / len(starts)))
        if good == len(starts):
            break
    return rows


def write_report(g: DynamicGraph, out_dir: str | Path, k_max: int | None = None) -> list[Path]:
    """Render the full report for one schedule; returns the files written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if k_max is None:
        k_max = max(4 * g.n, 4)
    written: list[Path] = []

    summary = metrics_summary(g, k_max)
    path = out / "metrics.json"
    path.write_text(json.dumps(metrics_to_json(summary), indent=2))
    written.append(path)

    path = out / "metrics.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["metric", "value", "exact", "witness"])
        for name in METRIC_ORDER:
            m = summary[name]
            writer.writerow([
                name,
                "unbounded" if m.value is None else m.value,
                m.exact,
                "" if m.witness is None else " ".join(map(str, m.witness)),
            ])
    written.append(path)

    growth = _growth_rows(g)
    path = out / "growth_curves.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["node", "delay", "influence_count"])
        writer.writerows(growth)
    written.append(path)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for u in range(1, g.n + 1):
        points = [(d, s) for node, d, s in growth if node == u]
        ax.plot([p[0] for p in points], [p[1] for p in points],
                marker="o", markersize=3, linewidth=1, label=f"node {u}")
    ax.set_xlabel("rounds after time 0")
    ax.set_ylabel("nodes influenced")
    ax.set_title(f"influence growth, n={g.n} ({g.kind})")
    ax.set_ylim(0, g.n + 0.5)
    if g.n <= 12:
        ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    path = out / "growth_curves.png"
    fig.savefig(path, dpi=130)
    plt.close(fig)
    written.append(path)

    shown = _display_rounds(g)
    edges = sorted_edges(frozenset().union(*(g.instance(t) for t in range(1, shown + 1))))
    path = out / "edge_activity.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["round", "edge", "active"])
        for t in range(1, shown + 1):
            inst = g.instance(t)
            for e in edges:
                writer.writerow([t, f"{e[0]}-{e[1]}", int(e in inst)])
    written.append(path)

    if edges:
        fig, ax = plt.subplots(figsize=(7, max(2.5, 0.22 * len(edges))))
        grid = [[1 if e in g.instance(t) else 0 for t in range(1, shown + 1)] for e in edges]
        ax.imshow(grid, aspect="auto", cmap="Greys", interpolation="nearest")
        ax.set_yticks(range(len(edges)))
        ax.set_yticklabels([f"{a}-{b}" for a, b in edges], fontsize=6)
        ax.set_xticks(range(0, shown, max(1, shown // 12)))
        ax.set_xticklabels(range(1, shown + 1, max(1, shown // 12)), fontsize=7)
        ax.set_xlabel("round")
        ax.set_title("edge activity")
        fig.tight_layout()
        path = out / "edge_activity.png"
        fig.savefig(path, dpi=130)
        plt.close(fig)
        written.append(path)

    conn = _connectivity_rows(g, k_cap=max(2 * g.n, 8))
    path = out / "window_connectivity.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["window_length", "connected_fraction"])
        writer.writerows(conn)
    written.append(path)

    if conn:
        fig, ax = plt.subplots(figsize=(6, 3.5))
        ax.bar([k for k, _ in conn], [frac for _, frac in conn], color="#4878a8")
        ax.set_xlabel("window length (rounds)")
        ax.set_ylabel("fraction of connected windows")
        ax.set_ylim(0, 1.05)
        ax.set_title("window-union connectivity")
        fig.tight_layout()
        path = out / "window_connectivity.png"
        fig.savefig(path, dpi=130)
        plt.close(fig)
        written.append(path)

    return written
