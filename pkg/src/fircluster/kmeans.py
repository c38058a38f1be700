"""Lloyd's k-means with k-means++ seeding.

Distances are squared Euclidean throughout, so the objective tracked here
is the usual within-cluster sum of squares.  Randomness comes only from a
``numpy.random.Generator`` built from an explicit seed; see :func:`make_rng`
and :func:`child_seed` for how run-level streams are derived.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .data import Partition, as_matrix
from .errors import DegenerateDataError, FirClusterError

MAX_ITER = 300


@dataclass(frozen=True)
class ClusteringResult:
    partition: Partition
    centroids: np.ndarray
    wcss: float
    iterations: int
    history: tuple = ()
    converged: bool = True

    @property
    def labels(self):
        return self.partition.labels


def make_rng(seed):
    """PCG64 generator for a seed or a sequence of seed words."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def child_seed(master, *keys):
    """Derive a 64-bit seed from ``master`` and any mix of ints and strings.

    The derivation is a BLAKE2b hash of the keys, so it is stable across
    platforms and Python sessions (unlike ``hash``).
    """
    h = hashlib.blake2b(digest_size=8)
    for part in (master, *keys):
        h.update(repr(part).encode())
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "little")


def _sq_dists(X, Z):
    # direct differences rather than the |x|^2 - 2xz + |z|^2 expansion, which loses
    # precision for nearby points and can break monotonicity of the objective
    diff = X[:, None, :] - Z[None, :, :]
    return np.einsum("ikj,ikj->ik", diff, diff)


def _objective(X, labels, Z):
    resid = X - Z[labels]
    return float(np.einsum("ij,ij->", resid, resid))


def _update(X, labels, k):
    Z = np.empty((k, X.shape[1]))
    for l in range(k):
        Z[l] = X[labels == l].mean(axis=0)
    return Z


def _fill_empty(X, labels, Z, k):
    """Give each empty cluster the point farthest from its current centroid."""
    labels = labels.copy()
    counts = np.bincount(labels, minlength=k)
    for l in np.flatnonzero(counts == 0):
        resid = X - Z[labels]
        far = np.einsum("ij,ij->i", resid, resid)
        # never strip a cluster down to nothing
        far[np.bincount(labels, minlength=k)[labels] <= 1] = -1.0
        i = int(np.argmax(far))
        labels[i] = l
        Z[l] = X[i]
    return labels


def kmeans_lloyd(data, init, max_iter=MAX_ITER):
    """Alternate nearest-centroid assignment and mean update from ``init``.

    Stops when the centroids stop changing or after ``max_iter`` rounds.
    Ties in assignment go to the lowest cluster index.  ``history`` holds
    the objective after every assignment+update round.
    """
    X = as_matrix(data)
    Z = np.array(init, dtype=np.float64, copy=True)
    if Z.ndim == 1:
        Z = Z[:, None]
    k = Z.shape[0]
    if k < 1 or k > X.shape[0]:
        raise FirClusterError(f"k={k} outside [1, n={X.shape[0]}]")
    if Z.shape[1] != X.shape[1]:
        raise FirClusterError("initial centroids and data disagree on feature count")

    history = []
    converged = False
    it = 0
    while it < max_iter:
        it += 1
        labels = np.argmin(_sq_dists(X, Z), axis=1)
        if np.unique(labels).size < k:
            labels = _fill_empty(X, labels, Z, k)
        Z_new = _update(X, labels, k)
        history.append(_objective(X, labels, Z_new))
        if np.array_equal(Z_new, Z):
            Z = Z_new
            converged = True
            break
        Z = Z_new

    return ClusteringResult(
        partition=Partition(labels, k),
        centroids=Z,
        wcss=history[-1],
        iterations=it,
        history=tuple(history),
        converged=converged,
    )


def kmeanspp_init(data, k, seed):
    """Pick ``k`` starting centroids from the data, k-means++ style.

    The first is uniform over the points; each later one is drawn with
    probability proportional to its squared distance from the nearest
    centroid already chosen.
    """
    X = as_matrix(data)
    n = X.shape[0]
    if not 1 <= k <= n:
        raise FirClusterError(f"k={k} outside [1, n={n}]")
    if k > 1 and np.unique(X, axis=0).shape[0] < k:
        raise DegenerateDataError(f"fewer than k={k} distinct points")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)

    chosen = [int(rng.integers(n))]
    D = np.einsum("ij,ij->i", X - X[chosen[0]], X - X[chosen[0]])
    for _ in range(1, k):
        cum = np.cumsum(D)
        i = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
        if i >= n or D[i] <= 0.0:
            # rounding pushed the draw past the last positive mass
            i = int(np.flatnonzero(D > 0)[-1])
        chosen.append(i)
        resid = X - X[i]
        D = np.minimum(D, np.einsum("ij,ij->i", resid, resid))
    return X[chosen].copy()


def run_kmeanspp(data, k, seed, max_iter=MAX_ITER):
    """k-means++ seeding followed by Lloyd iterations; deterministic per seed."""
    rng = make_rng(seed)
    init = kmeanspp_init(data, k, rng)
    return kmeans_lloyd(data, init, max_iter=max_iter)
