"""Experiment output files and the three report renderings.

Layout written by :func:`write_experiment`::

    out/
      <config_id>.jsonl   one TrialRecord per line, dataset then run order
      summary.json        per-config summaries plus per-dataset correlations
      summary.csv         one row per config, columns paired as INDEX / FIR+INDEX
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .errors import FirClusterError
from .experiment import COLUMNS, IndexSummary

_CONFIG_FIELDS = ("n", "m", "k", "sigma", "noise")


def summary_record(outcome, runs, datasets, method, master_seed):
    return {
        "config_id": outcome.config.config_id,
        "config": outcome.config.to_dict(),
        "runs": runs,
        "datasets": datasets,
        "correlation": method,
        "master_seed": master_seed,
        "indices": {col: vars(outcome.summary.indices[col]) for col in COLUMNS},
        "per_dataset": [
            {"dataset_id": r.dataset_id, "failed_runs": r.failed_runs, "correlations": r.correlations}
            for r in outcome.results
        ],
    }


def write_experiment(outdir, outcomes, runs, datasets, method, master_seed):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    records = []
    for oc in outcomes:
        with (out / f"{oc.config.config_id}.jsonl").open("w") as fh:
            for rec in oc.records:
                fh.write(rec.to_json() + "\n")
        records.append(summary_record(oc, runs, datasets, method, master_seed))
    (out / "summary.json").write_text(json.dumps({"configs": records}, indent=2) + "\n")
    (out / "summary.csv").write_text(render(records, "csv"))
    return records


def load_summary(path):
    path = Path(path)
    if path.is_dir():
        path = path / "summary.json"
    if not path.exists():
        raise FirClusterError(f"{path}: no such summary")
    try:
        payload = json.loads(path.read_text())
        return payload["configs"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FirClusterError(f"{path}: not a summary file ({exc})") from None


def _csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["config_id", *_CONFIG_FIELDS, "datasets", "runs"]
    for col in COLUMNS:
        header += [f"{col}_mean", f"{col}_std", f"{col}_undefined"]
    writer.writerow(header)
    for rec in records:
        row = [rec["config_id"], *(rec["config"][f] for f in _CONFIG_FIELDS), rec["datasets"], rec["runs"]]
        for col in COLUMNS:
            s = rec["indices"][col]
            row += ["" if s["mean"] is None else repr(s["mean"]),
                    "" if s["std"] is None else repr(s["std"]),
                    s["undefined"]]
        writer.writerow(row)
    return buf.getvalue()


def _table(records):
    cells = [["config", *COLUMNS]]
    for rec in records:
        cells.append([rec["config_id"], *(IndexSummary(**rec["indices"][c]).cell() for c in COLUMNS)])
    widths = [max(len(row[i]) for row in cells) for i in range(len(cells[0]))]
    lines = ["  ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(row, widths)))
             for row in cells]
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines) + "\n"


def render(records, fmt="table"):
    if fmt == "csv":
        return _csv(records)
    if fmt == "json":
        return json.dumps({"configs": records}, indent=2) + "\n"
    if fmt == "table":
        return _table(records)
    raise FirClusterError(f"unknown report format {fmt!r}")
