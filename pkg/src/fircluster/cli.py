"""Command-line front end: ``fircluster <subcommand> [flags]``.

Exit codes: 0 success, 1 usage error, 2 data error.  Diagnostics go to
stderr; data goes to files or stdout.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import experiment as exp
from .data import Partition, minmax_normalize, read_dataset_csv, write_dataset_csv
from .errors import FirClusterError
from .fir import fir_rescale
from .kmeans import run_kmeanspp
from .report import load_summary, render, write_experiment
from .synthgen import GenConfig, generate_dataset
from .validity import INTERNAL_INDICES, adjusted_rand_index, evaluate

log = logging.getLogger("fircluster")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text, out):
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _dump(obj):
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _load_labels(path):
    """Labels from a dataset CSV's ``label`` column or a JSON ``labels`` array."""
    path = Path(path)
    if path.suffix == ".json":
        payload = json.loads(path.read_text())
        if "labels" not in payload:
            raise FirClusterError(f"{path}: no 'labels' array")
        return np.asarray(payload["labels"], dtype=np.int64)
    _, labels = read_dataset_csv(path)
    if labels is None:
        raise FirClusterError(f"{path}: no label column")
    return labels


def _load_data(path, normalize):
    ds, labels = read_dataset_csv(path)
    X = minmax_normalize(ds.values) if normalize else ds.values
    return X, labels


# -- subcommands --------------------------------------------------------------

def cmd_generate(args):
    cfg = GenConfig(args.n, args.m, args.k, args.sigma, args.noise, args.seed)
    ds = generate_dataset(cfg)
    meta = {
        "config": cfg.to_dict(),
        "config_id": cfg.config_id,
        "feature_kinds": list(ds.data.feature_kinds),
        "centers": ds.centers.tolist(),
    }
    write_dataset_csv(args.out, ds.data, ds.truth.labels, meta)
    log.info("wrote %s (%d x %d)", args.out, ds.data.n, ds.data.m)


def cmd_cluster(args):
    X, _ = _load_data(args.data, args.normalize)
    res = run_kmeanspp(X, args.k, args.seed)
    out = {
        "k": args.k,
        "seed": args.seed,
        "wcss": res.wcss,
        "iterations": res.iterations,
        "converged": res.converged,
        "labels": res.labels.tolist(),
        "centroids": res.centroids.tolist(),
    }
    if args.fir:
        _, weights = fir_rescale(X, res.partition, iters=args.fir_iters)
        out["fir_weights"] = weights.tolist()
    _emit(_dump(out), args.out)


def _parse_indices(text):
    if text.lower() == "all":
        return INTERNAL_INDICES
    names = tuple(t.strip().upper() for t in text.split(",") if t.strip())
    bad = [n for n in names if n not in INTERNAL_INDICES]
    if bad or not names:
        raise UsageError(f"--indices: unknown {bad or text!r}; choose from {', '.join(INTERNAL_INDICES)} or 'all'")
    return names


def cmd_evaluate(args):
    names = _parse_indices(args.indices)
    X, _ = _load_data(args.data, args.normalize)
    part = Partition.from_labels(_load_labels(args.labels_from))
    out = evaluate(X, part, names, fir=args.fir, fir_iters=args.fir_iters)
    if args.truth_from:
        out["ARI"] = adjusted_rand_index(_load_labels(args.truth_from), part.labels)
    _emit(_dump(out), args.out)


def _load_configs(source):
    if source == "standard":
        text = resources.files("fircluster").joinpath("standard_configs.json").read_text()
    else:
        text = Path(source).read_text()
    records = json.loads(text)
    if isinstance(records, dict):
        records = [records]
    return [GenConfig.from_dict(r) for r in records]


def cmd_experiment(args):
    configs = _load_configs(args.config)
    runs, datasets = args.runs, args.datasets
    if args.full_scale:
        runs, datasets = exp.FULL_RUNS, exp.FULL_DATASETS
    outcomes = exp.run_experiment(configs, runs, datasets, args.seed, args.jobs, args.corr, args.fir_iters)
    records = write_experiment(args.out, outcomes, runs, datasets, args.corr, args.seed)
    sys.stderr.write(render(records, "table"))


def cmd_report(args):
    _emit(render(load_summary(args.input), args.format), args.out)


def cmd_pca(args):
    X, truth = _load_data(args.data, args.normalize)
    predicted = None
    if args.labels_from:
        predicted = _load_labels(args.labels_from)
    elif args.k:
        predicted = run_kmeanspp(X, args.k, args.seed).labels
    if args.fir:
        basis = predicted if predicted is not None else truth
        if basis is None:
            raise UsageError("--fir needs labels: a label column, --labels-from, or --k")
        X, _ = fir_rescale(X, Partition.from_labels(basis), iters=args.fir_iters)
    scores = exp.pca_project(X, args.dims)

    header = [f"component{d + 1}" for d in range(args.dims)] + ["true_label", "predicted_label"]
    rows = []
    for i, row in enumerate(scores):
        rows.append([repr(float(v)) for v in row]
                    + ["" if truth is None else int(truth[i]),
                       "" if predicted is None else int(predicted[i])])
    if args.out is None or args.out == "-":
        fh = sys.stdout
        _write_rows(fh, header, rows)
    else:
        with open(args.out, "w", newline="") as fh:
            _write_rows(fh, header, rows)


def _write_rows(fh, header, rows):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


# -- parser -------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="fircluster", description="Cluster validity with feature importance rescaling.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a synthetic Gaussian-blob dataset")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True, help="informative features")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--sigma", type=float, default=1.0)
    g.add_argument("--noise", type=int, default=0, help="uniform noise features to append")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True, help="CSV path; a JSON sidecar is written next to it")
    g.set_defaults(synopsis=g, func=cmd_generate)

    c = sub.add_parser("cluster", help="run k-means++ on a dataset")
    c.add_argument("--data", required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--fir", action="store_true", help="also report FIR weights for the result")
    c.add_argument("--fir-iters", type=int, default=2)
    c.add_argument("--normalize", action="store_true", help="mean-centre and range-scale features first")
    c.add_argument("--out", default=None)
    c.set_defaults(synopsis=c, func=cmd_cluster)

    e = sub.add_parser("evaluate", help="compute validity indices for a labelling")
    e.add_argument("--data", required=True)
    e.add_argument("--labels-from", required=True, help="CSV with a label column, or JSON with 'labels'")
    e.add_argument("--indices", default="all", help="'all' or a comma list of WCSS,ASW,CH,DB")
    e.add_argument("--fir", action="store_true", help="add FIR+<index> values")
    e.add_argument("--fir-iters", type=int, default=2)
    e.add_argument("--truth-from", default=None, help="ground-truth labels; adds ARI")
    e.add_argument("--normalize", action="store_true")
    e.add_argument("--out", default=None)
    e.set_defaults(synopsis=e, func=cmd_evaluate)

    x = sub.add_parser("experiment", help="run the index-vs-ARI correlation study")
    x.add_argument("--config", default="standard", help="JSON list of configs, or 'standard' for the 54 built-in ones")
    x.add_argument("--runs", type=int, default=exp.DESK_RUNS)
    x.add_argument("--datasets", type=int, default=exp.DESK_DATASETS)
    x.add_argument("--full-scale", action="store_true",
                   help=f"use {exp.FULL_DATASETS} datasets x {exp.FULL_RUNS} runs")
    x.add_argument("--jobs", type=int, default=1)
    x.add_argument("--corr", choices=sorted(exp.CORRELATIONS), default="pearson")
    x.add_argument("--seed", type=int, default=0, help="master seed")
    x.add_argument("--fir-iters", type=int, default=2)
    x.add_argument("--out", required=True, help="output directory")
    x.set_defaults(synopsis=x, func=cmd_experiment)

    r = sub.add_parser("report", help="render an experiment summary")
    r.add_argument("--in", dest="input", required=True, help="summary.json or the experiment directory")
    r.add_argument("--format", choices=("csv", "json", "table"), default="table")
    r.add_argument("--out", default=None)
    r.set_defaults(synopsis=r, func=cmd_report)

    q = sub.add_parser("pca", help="plot-ready principal-component projection")
    q.add_argument("--data", required=True)
    q.add_argument("--dims", type=int, default=2)
    q.add_argument("--labels-from", default=None, help="predicted labels")
    q.add_argument("--k", type=int, default=None, help="predict labels with k-means++")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--fir", action="store_true", help="project the FIR-rescaled data")
    q.add_argument("--fir-iters", type=int, default=2)
    q.add_argument("--normalize", action="store_true")
    q.add_argument("--out", default=None)
    q.set_defaults(synopsis=q, func=cmd_pca)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        args.func(args)
    except UsageError as exc:
        args.synopsis.print_usage(sys.stderr)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (FirClusterError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
