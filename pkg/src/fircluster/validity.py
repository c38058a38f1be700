"""Internal cluster validity indices and the Adjusted Rand Index.

WCSS and Calinski-Harabasz use squared Euclidean distances (sums of
squares); silhouette and Davies-Bouldin use plain Euclidean distances.
Centroids are always recomputed from the ``(data, partition)`` pair passed
in, so evaluating on rescaled data means passing the rescaled matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .data import as_matrix, as_partition, compute_centroids
from .errors import (
    CoincidentCentroidsError,
    DegenerateKError,
    LengthMismatchError,
    SingletonClusterError,
    ZeroWCSSError,
)
from .fir import fir_rescale

HIGHER = "higher_better"
LOWER = "lower_better"
ORIENTATION = {"WCSS": LOWER, "ASW": HIGHER, "CH": HIGHER, "DB": LOWER, "ARI": HIGHER}
INTERNAL_INDICES = ("WCSS", "ASW", "CH", "DB")

_CHUNK = 1024


@dataclass(frozen=True)
class IndexValue:
    name: str
    value: float

    @property
    def orientation(self):
        return ORIENTATION[self.name.split("+")[-1]]


def wcss(data, part):
    X = as_matrix(data)
    part = as_partition(part, X.shape[0])
    resid = X - compute_centroids(X, part)[part.labels]
    return float(np.einsum("ij,ij->", resid, resid))


def total_sum_of_squares(data):
    X = as_matrix(data)
    resid = X - X.mean(axis=0)
    return float(np.einsum("ij,ij->", resid, resid))


def bcss(data, part):
    X = as_matrix(data)
    part = as_partition(part, X.shape[0])
    diff = compute_centroids(X, part) - X.mean(axis=0)
    return float(np.sum(part.sizes() * np.einsum("ij,ij->i", diff, diff)))


def _cluster_distance_sums(X, rows, labels, k):
    """Sum of Euclidean distances from each point in ``rows`` to every cluster."""
    dist = cdist(X[rows], X)
    out = np.empty((dist.shape[0], k))
    for l in range(k):
        out[:, l] = dist[:, labels == l].sum(axis=1)
    return out


def _silhouettes(X, part, rows, strict):
    labels, k = part.labels, part.k
    sizes = part.sizes()
    sums = _cluster_distance_sums(X, rows, labels, k)
    own = labels[rows]
    idx = np.arange(rows.size)
    own_size = sizes[own]
    singleton = own_size == 1
    if strict and np.any(singleton):
        raise SingletonClusterError(int(rows[np.argmax(singleton)]))
    with np.errstate(divide="ignore", invalid="ignore"):
        a = sums[idx, own] / (own_size - 1)
    means = sums / sizes
    means[idx, own] = np.inf
    b = means.min(axis=1)
    top = np.maximum(a, b)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = (b - a) / top
    # singletons, and points whose own and nearest clusters are all duplicates of it
    s[singleton | (top == 0)] = 0.0
    return s


def silhouette_point(data, part, i, strict=False):
    """Silhouette of point ``i``; singleton clusters score 0 unless ``strict``."""
    X = as_matrix(data)
    part = as_partition(part, X.shape[0])
    if part.k < 2:
        raise DegenerateKError("silhouette needs at least 2 clusters")
    return float(_silhouettes(X, part, np.array([i]), strict)[0])


def silhouette_samples(data, part, strict=False):
    X = as_matrix(data)
    part = as_partition(part, X.shape[0])
    if part.k < 2:
        raise DegenerateKError("silhouette needs at least 2 clusters")
    n = X.shape[0]
    chunks = [
        _silhouettes(X, part, np.arange(lo, min(lo + _CHUNK, n)), strict)
        for lo in range(0, n, _CHUNK)
    ]
    return np.concatenate(chunks)


def asw(data, part, strict=False):
    """Average silhouette width."""
    return float(np.mean(silhouette_samples(data, part, strict)))


def calinski_harabasz(data, part):
    X = as_matrix(data)
    part = as_partition(part, X.shape[0])
    n, k = X.shape[0], part.k
    if k < 2 or k > n - 1:
        raise DegenerateKError(f"Calinski-Harabasz needs 2 <= k <= n-1, got k={k}, n={n}")
    w = wcss(X, part)
    if w == 0.0:
        raise ZeroWCSSError("every point coincides with its centroid")
    return (bcss(X, part) / (k - 1)) / (w / (n - k))


def davies_bouldin(data, part):
    X = as_matrix(data)
    part = as_partition(part, X.shape[0])
    k = part.k
    if k < 2:
        raise DegenerateKError("Davies-Bouldin needs at least 2 clusters")
    Z = compute_centroids(X, part)
    spread = np.array([
        np.mean(np.sqrt(np.sum((X[part.labels == l] - Z[l]) ** 2, axis=1))) for l in range(k)
    ])
    sep = cdist(Z, Z)
    np.fill_diagonal(sep, np.inf)
    if np.any(sep == 0):
        l, t = np.argwhere(sep == 0)[0]
        raise CoincidentCentroidsError(int(l), int(t))
    ratios = (spread[:, None] + spread[None, :]) / sep
    return float(np.mean(ratios.max(axis=1)))


def contingency_table(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatchError(f"label vectors of shape {a.shape} and {b.shape}")
    _, ia = np.unique(a, return_inverse=True)
    _, ib = np.unique(b, return_inverse=True)
    ia, ib = ia.ravel(), ib.ravel()
    kb = ib.max() + 1 if ib.size else 0
    table = np.bincount(ia * kb + ib, minlength=(ia.max() + 1 if ia.size else 0) * kb)
    return table.reshape(-1, kb) if kb else table.reshape(0, 0)


def _pairs(x):
    x = np.asarray(x, dtype=np.int64)
    return int(np.sum(x * (x - 1) // 2))


def adjusted_rand_index(a, b):
    """Hubert-Arabie ARI between two labelings of the same points.

    When both partitions are a single cluster, or both are all singletons,
    the formula is 0/0; they are identical so 1.0 is returned.
    """
    table = contingency_table(a, b)
    n = int(table.sum())
    index = _pairs(table)
    sum_a = _pairs(table.sum(axis=1))
    sum_b = _pairs(table.sum(axis=0))
    total = n * (n - 1) // 2
    # (index - sum_a*sum_b/total) / ((sum_a+sum_b)/2 - sum_a*sum_b/total), scaled by
    # 2*total so numerator and denominator are exact integers
    num = 2 * (index * total - sum_a * sum_b)
    den = (sum_a + sum_b) * total - 2 * sum_a * sum_b
    if den == 0:
        return 1.0
    return num / den


_INDEX_FUNCS = {"WCSS": wcss, "ASW": asw, "CH": calinski_harabasz, "DB": davies_bouldin}


def compute_index(name, data, part):
    return IndexValue(name, float(_INDEX_FUNCS[name](data, part)))


def evaluate(data, part, indices=INTERNAL_INDICES, fir=False, fir_iters=2):
    """Dict of index values, plus ``FIR+<index>`` entries when ``fir`` is set."""
    X = as_matrix(data)
    part = as_partition(part, X.shape[0])
    out = {name: float(_INDEX_FUNCS[name](X, part)) for name in indices}
    if fir:
        Xr, _ = fir_rescale(X, part, iters=fir_iters)
        for name in indices:
            out[f"FIR+{name}"] = float(_INDEX_FUNCS[name](Xr, part))
    return out
