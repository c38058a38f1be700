"""Repeated k-means++ runs scored against ground truth.

For every generated dataset the harness runs k-means++ ``runs`` times,
records the ARI of each run against the true labels together with the
four internal indices before and after FIR rescaling, then correlates
each index vector with the ARI vector.  Per-dataset correlations are
averaged per configuration into the table layout used by the reports.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.stats import rankdata

from .data import as_matrix, minmax_normalize
from .errors import AllUndefinedError, FirClusterError, LengthMismatchError, RankDeficientError
from .fir import fir_rescale
from .kmeans import child_seed, run_kmeanspp
from .synthgen import GenConfig, generate_dataset
from .validity import INTERNAL_INDICES, adjusted_rand_index, asw, calinski_harabasz, davies_bouldin, wcss

log = logging.getLogger(__name__)

COLUMNS = tuple(col for name in INTERNAL_INDICES for col in (name, f"FIR+{name}"))
_FUNCS = {"WCSS": wcss, "ASW": asw, "CH": calinski_harabasz, "DB": davies_bouldin}

FULL_RUNS = 200
FULL_DATASETS = 50
DESK_RUNS = 50
DESK_DATASETS = 10


@dataclass(frozen=True)
class TrialRecord:
    dataset_id: str
    run_index: int
    seed: int
    ari: float | None
    indices: dict
    errors: dict = field(default_factory=dict)

    def to_json(self):
        return json.dumps(asdict(self), allow_nan=False)


@dataclass(frozen=True)
class DatasetResult:
    dataset_id: str
    config_id: str
    correlations: dict
    runs: int
    failed_runs: int = 0


@dataclass(frozen=True)
class IndexSummary:
    mean: float | None
    std: float | None
    defined: int
    undefined: int

    def cell(self):
        if self.mean is None:
            return "n/a"
        text = f"{_two(self.mean)}/{_two(self.std)}"
        return text + (f"[{self.undefined}u]" if self.undefined else "")


@dataclass(frozen=True)
class ConfigSummary:
    config_id: str
    indices: dict


def _two(x):
    text = f"{x:.2f}"
    return "0.00" if text == "-0.00" else text


# -- correlation ----------------------------------------------------------------

def pearson(x, y):
    """Sample Pearson correlation, or ``None`` when either vector is constant."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatchError(f"vectors of shape {x.shape} and {y.shape}")
    if x.size < 2:
        return None
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        return None
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def spearman(x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatchError(f"vectors of shape {x.shape} and {y.shape}")
    return pearson(rankdata(x), rankdata(y))


CORRELATIONS = {"pearson": pearson, "spearman": spearman}


# -- trials -------------------------------------------------------------------

def run_trials(ds, k, runs, base_seed, dataset_id="", fir_iters=2, seeds=None):
    """Run k-means++ ``runs`` times on the normalised data of ``ds``.

    Run ``r`` uses the seed ``child_seed(base_seed, dataset_id, r)`` unless
    ``seeds`` gives them explicitly.  Failures are kept in the record's
    ``errors`` mapping and never abort the batch.
    """
    if seeds is None:
        seeds = [child_seed(base_seed, dataset_id, r) for r in range(runs)]
    if len(seeds) != runs:
        raise FirClusterError(f"{len(seeds)} seeds for {runs} runs")
    X = minmax_normalize(ds.data)
    truth = ds.truth.labels
    return [_one_trial(X, truth, k, r, s, dataset_id, fir_iters) for r, s in enumerate(seeds)]


def _one_trial(X, truth, k, run_index, seed, dataset_id, fir_iters):
    values = dict.fromkeys(COLUMNS)
    errors = {}
    try:
        part = run_kmeanspp(X, k, seed).partition
    except FirClusterError as exc:
        errors["kmeans"] = str(exc)
        return TrialRecord(dataset_id, run_index, seed, None, values, errors)
    ari = adjusted_rand_index(truth, part.labels)
    for name in INTERNAL_INDICES:
        values[name] = _safe(_FUNCS[name], X, part, name, errors)
    try:
        Xr, _ = fir_rescale(X, part, iters=fir_iters)
    except FirClusterError as exc:
        errors["FIR"] = str(exc)
    else:
        for name in INTERNAL_INDICES:
            col = f"FIR+{name}"
            values[col] = _safe(_FUNCS[name], Xr, part, col, errors)
    return TrialRecord(dataset_id, run_index, seed, ari, values, errors)


def _safe(func, X, part, col, errors):
    try:
        value = float(func(X, part))
    except FirClusterError as exc:
        errors[col] = str(exc)
        return None
    if not math.isfinite(value):
        errors[col] = "non-finite value"
        return None
    return value


def correlate(records, dataset_id="", config_id="", method="pearson"):
    corr = CORRELATIONS[method]
    out = {}
    for col in COLUMNS:
        pairs = [(r.ari, r.indices[col]) for r in records if r.ari is not None and r.indices[col] is not None]
        if len(pairs) < 2:
            out[col] = None
            continue
        a, v = zip(*pairs)
        out[col] = corr(a, v)
    failed = sum(1 for r in records if r.errors)
    return DatasetResult(dataset_id, config_id, out, len(records), failed)


def aggregate(results, config_id="", allow_undefined=False):
    """Mean and population std of each column's correlation over datasets.

    Undefined correlations are left out and counted.  A column with no
    defined value raises :class:`AllUndefinedError` unless
    ``allow_undefined`` is set, in which case its mean and std are ``None``.
    """
    summary = {}
    for col in COLUMNS:
        vals = [r.correlations[col] for r in results if r.correlations[col] is not None]
        undefined = len(results) - len(vals)
        if not vals:
            if not allow_undefined:
                raise AllUndefinedError(col)
            summary[col] = IndexSummary(None, None, 0, undefined)
            continue
        arr = np.array(vals)
        summary[col] = IndexSummary(float(arr.mean()), float(arr.std()), len(vals), undefined)
    return ConfigSummary(config_id, summary)


# -- PCA ----------------------------------------------------------------------

def pca(data, dims=2):
    """Principal axes of the sample covariance.

    Returns ``(scores, eigenvalues, axes)`` for the top ``dims`` components.
    Each axis is signed so that its largest-magnitude entry is positive.
    """
    X = as_matrix(data)
    n, m = X.shape
    if dims < 1 or dims > m:
        raise FirClusterError(f"dims={dims} outside [1, m={m}]")
    if n < 2:
        raise RankDeficientError("need at least two points")
    Xc = X - X.mean(axis=0)
    cov = Xc.T @ Xc / (n - 1)
    evals, evecs = np.linalg.eigh(cov)
    order = np.argsort(evals)[::-1]
    evals = evals[order]
    evecs = evecs[:, order]
    tol = max(evals[0], 0.0) * m * np.finfo(float).eps
    if np.sum(evals > tol) < dims:
        raise RankDeficientError(f"fewer than {dims} non-zero eigenvalues")
    axes = evecs[:, :dims]
    pivots = np.argmax(np.abs(axes), axis=0)
    axes = axes * np.sign(axes[pivots, np.arange(dims)])
    return Xc @ axes, evals[:dims], axes


def pca_project(data, dims=2):
    return pca(data, dims)[0]


# -- experiment driver --------------------------------------------------------

def dataset_id(cfg, index):
    return f"{cfg.config_id}/d{index:03d}"


def dataset_seed(master_seed, cfg, index):
    return child_seed(master_seed, cfg.seed, dataset_id(cfg, index))


def run_dataset(cfg, index, runs, master_seed, method="pearson", fir_iters=2):
    """Generate dataset ``index`` of ``cfg`` and run every trial on it."""
    did = dataset_id(cfg, index)
    ds = generate_dataset(cfg.with_seed(dataset_seed(master_seed, cfg, index)))
    records = run_trials(ds, cfg.k, runs, master_seed, did, fir_iters)
    return records, correlate(records, did, cfg.config_id, method)


def _task(args):
    return run_dataset(*args)


@dataclass
class ConfigOutcome:
    config: GenConfig
    records: list
    results: list
    summary: ConfigSummary


def run_experiment(configs, runs=DESK_RUNS, datasets=DESK_DATASETS, master_seed=0,
                   jobs=1, method="pearson", fir_iters=2):
    """Run every configuration; output order never depends on ``jobs``."""
    if method not in CORRELATIONS:
        raise FirClusterError(f"unknown correlation {method!r}")
    if runs < 2:
        raise FirClusterError("need at least two runs per dataset")
    tasks = [(cfg, d, runs, master_seed, method, fir_iters) for cfg in configs for d in range(datasets)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            done = list(pool.map(_task, tasks))
    else:
        done = []
        for t in tasks:
            done.append(_task(t))
            log.info("finished %s", dataset_id(t[0], t[1]))

    outcomes = []
    for c, cfg in enumerate(configs):
        chunk = done[c * datasets:(c + 1) * datasets]
        records = [rec for recs, _ in chunk for rec in recs]
        results = [res for _, res in chunk]
        summary = aggregate(results, cfg.config_id, allow_undefined=True)
        outcomes.append(ConfigOutcome(cfg, records, results, summary))
    return outcomes
