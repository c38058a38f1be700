"""Numeric containers and the primitives shared by every other module.

Data matrices are plain ``float64`` arrays of shape ``(n, m)`` and
partitions are integer label vectors with ids in ``[0, k)``.  The
:class:`Dataset` and :class:`Partition` wrappers add validation and the
metadata that travels through files, but every function here also accepts
bare arrays.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConstantFeatureError, FirClusterError, InvalidPartitionError

INFORMATIVE = "informative"
NOISE = "noise"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Dataset:
    values: np.ndarray
    feature_kinds: tuple = field(default=None)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise FirClusterError(f"dataset must be a non-empty 2-D matrix, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise FirClusterError("dataset contains NaN or Inf")
        values.setflags(write=False)
        kinds = self.feature_kinds
        if kinds is None:
            kinds = (UNKNOWN,) * values.shape[1]
        kinds = tuple(kinds)
        if len(kinds) != values.shape[1]:
            raise FirClusterError(f"{len(kinds)} feature kinds for {values.shape[1]} features")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "feature_kinds", kinds)

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def m(self):
        return self.values.shape[1]

    def normalized(self):
        return Dataset(minmax_normalize(self.values), self.feature_kinds)


@dataclass(frozen=True)
class Partition:
    labels: np.ndarray
    k: int

    def __post_init__(self):
        labels = np.asarray(self.labels)
        if labels.ndim != 1 or labels.size == 0:
            raise InvalidPartitionError("labels must be a non-empty 1-D vector")
        if not np.issubdtype(labels.dtype, np.integer):
            if not np.all(np.equal(np.mod(labels, 1), 0)):
                raise InvalidPartitionError("labels must be integers")
        labels = labels.astype(np.int64)
        k = int(self.k)
        if k < 1 or k > labels.size:
            raise InvalidPartitionError(f"k={k} outside [1, n={labels.size}]")
        if labels.min() < 0 or labels.max() >= k:
            raise InvalidPartitionError(f"labels must lie in [0, {k})")
        counts = np.bincount(labels, minlength=k)
        if np.any(counts == 0):
            raise InvalidPartitionError(f"clusters {np.flatnonzero(counts == 0).tolist()} are empty")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "k", k)

    @classmethod
    def from_labels(cls, labels):
        """Build a partition from arbitrary hashable labels, renumbered in order of first appearance."""
        labels = np.asarray(labels)
        _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
        order = np.argsort(first, kind="stable")
        remap = np.empty_like(order)
        remap[order] = np.arange(order.size)
        return cls(remap[inverse.ravel()], order.size)

    @property
    def n(self):
        return self.labels.size

    def sizes(self):
        return np.bincount(self.labels, minlength=self.k)


def as_matrix(data):
    """Return the ``(n, m)`` float64 matrix behind ``data``."""
    if isinstance(data, Dataset):
        return data.values
    values = np.asarray(data, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    return values


def as_partition(part, n=None):
    if not isinstance(part, Partition):
        labels = np.asarray(part)
        if labels.size and np.issubdtype(labels.dtype, np.integer) and labels.min() >= 0:
            part = Partition(labels, int(labels.max()) + 1)
        else:
            part = Partition.from_labels(labels)
    if n is not None and part.n != n:
        raise InvalidPartitionError(f"partition has {part.n} labels for {n} points")
    return part


def minmax_normalize(data):
    """Centre each feature on its mean and divide by its range.

    Note this subtracts the mean rather than the minimum, so output columns
    have mean 0 and range 1.
    """
    X = as_matrix(data)
    lo = X.min(axis=0)
    hi = X.max(axis=0)
    span = hi - lo
    constant = np.flatnonzero(span == 0)
    if constant.size:
        raise ConstantFeatureError(int(constant[0]))
    return (X - X.mean(axis=0)) / span


def compute_centroids(data, part):
    """Row ``l`` is the component-wise mean of the points labelled ``l``."""
    X = as_matrix(data)
    part = as_partition(part, X.shape[0])
    cents = np.empty((part.k, X.shape[1]))
    for l in range(part.k):
        cents[l] = X[part.labels == l].mean(axis=0)
    return cents


def feature_dispersion(data, part, cents=None):
    """Per-feature within-cluster sum of squared deviations from the centroids."""
    X = as_matrix(data)
    part = as_partition(part, X.shape[0])
    if cents is None:
        cents = compute_centroids(X, part)
    resid = X - cents[part.labels]
    return np.einsum("ij,ij->j", resid, resid)


# -- files --------------------------------------------------------------------

def sidecar_path(path):
    return Path(path).with_suffix(".json")


def write_dataset_csv(path, data, labels=None, meta=None):
    """Write ``f0,...,f{m-1}[,label]`` CSV and, when given, a JSON sidecar.

    Floats are written with 17 significant digits so a read-back is exact.
    """
    X = as_matrix(data)
    path = Path(path)
    header = [f"f{v}" for v in range(X.shape[1])]
    if labels is not None:
        labels = np.asarray(labels)
        header.append("label")
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for i, row in enumerate(X):
            cells = [repr(float(x)) for x in row]
            if labels is not None:
                cells.append(str(int(labels[i])))
            writer.writerow(cells)
    if meta is not None:
        sidecar_path(path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def read_dataset_csv(path):
    """Read a dataset CSV; returns ``(Dataset, labels or None)``.

    Feature kinds come from the JSON sidecar when one exists.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise FirClusterError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    has_label = bool(header) and header[-1] == "label"
    m = len(header) - int(has_label)
    if m < 1 or header[:m] != [f"f{v}" for v in range(m)]:
        raise FirClusterError(f"{path}: header must be f0,...,f{{m-1}}[,label]")
    body = [r for r in rows[1:] if r]
    try:
        values = np.array([[float(x) for x in r[:m]] for r in body], dtype=np.float64)
        labels = np.array([int(r[m]) for r in body], dtype=np.int64) if has_label else None
    except (ValueError, IndexError) as exc:
        raise FirClusterError(f"{path}: malformed row ({exc})") from None
    kinds = None
    side = sidecar_path(path)
    if side.exists():
        meta = json.loads(side.read_text())
        kinds = meta.get("feature_kinds")
    return Dataset(values.reshape(len(body), m), kinds), labels
