import csv
import json

from dynnetlab.generators import soifer, split_halves_graph
from dynnetlab.report import metrics_to_json, write_report
from dynnetlab.influence import metrics_summary


def test_report_for_periodic_schedule(tmp_path):
    files = write_report(soifer(6), tmp_path)
    names = {f.name for f in files}
    assert {"metrics.json", "metrics.csv", "growth_curves.csv", "growth_curves.png",
            "edge_activity.csv", "edge_activity.png",
            "window_connectivity.csv", "window_connectivity.png"} == names
    doc = json.loads((tmp_path / "metrics.json").read_text())
    assert doc["oit"] == {"value": 1, "exact": True, "witness": None}
    with (tmp_path / "window_connectivity.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    # Single matchings disconnect; two-round unions connect everything.
    assert float(rows[0]["connected_fraction"]) == 0.0
    assert float(rows[-1]["connected_fraction"]) == 1.0


def test_report_for_explicit_schedule(tmp_path):
    files = write_report(split_halves_graph(8), tmp_path)
    assert (tmp_path / "growth_curves.png").stat().st_size > 0
    with (tmp_path / "growth_curves.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    # Explicit horizon of 2 rounds: no curve extends past delay 2.
    assert max(int(r["delay"]) for r in rows) <= 2


def test_metric_json_encodes_unbounded():
    from dynnetlab.generators import from_static

    doc = metrics_to_json(metrics_summary(from_static(2, []), 4))
    assert doc["oit"]["value"] == "unbounded"
    assert doc["ct"]["value"] == "unbounded"
