"""Feature Importance Rescaling.

Given a fixed partition, each feature ``v`` gets the factor

    alpha_v = 1 / sum_j (D_v / D_j)

where ``D_v`` is its within-cluster dispersion.  These factors minimise the
weighted objective ``sum_v alpha_v**2 * D_v`` subject to ``sum(alpha) == 1``,
and the minimum equals ``1 / sum_j (1 / D_j)``.  High-dispersion (noisy)
features therefore receive small factors and barely move the objective.

The weights say nothing about which partition is best in the richness-axiom
sense: ``D`` is itself a function of the partition, so the weighted
objective cannot be tuned to make an arbitrary partition optimal.
"""

from __future__ import annotations

import numpy as np

from .data import as_matrix, as_partition, compute_centroids, feature_dispersion
from .errors import FirClusterError, LengthMismatchError, TrivialFeatureError

# D_v below this fraction of max(D) counts as zero
def _check_dispersion(disp):
    D = np.asarray(disp, dtype=np.float64)
    if D.ndim != 1 or D.size == 0:
        raise FirClusterError("dispersion must be a non-empty 1-D vector")
    if np.any(~np.isfinite(D)) or np.any(D < 0):
        raise FirClusterError("dispersion entries must be finite and non-negative")
    trivial = np.flatnonzero(D == 0)
    if trivial.size:
        raise TrivialFeatureError(int(trivial[0]))
    return D


def fir_weights(disp):
    """Optimal rescaling factors for the dispersion vector ``disp``."""
    D = _check_dispersion(disp)
    return 1.0 / (D[:, None] / D[None, :]).sum(axis=1)


def fir_weights_harmonic(disp):
    """Same factors written as ``(1/D_v) / sum_j (1/D_j)``."""
    D = _check_dispersion(disp)
    inv = 1.0 / D
    return inv / inv.sum()


def weight_sensitivity(disp):
    """Closed-form ``d alpha_v / d D_v`` for every feature (all negative)."""
    D = _check_dispersion(disp)
    ratio_sum = (D[:, None] / D[None, :]).sum(axis=1)
    sq_sum = (D[:, None] ** 2 / D[None, :]).sum(axis=1)
    return -(1.0 / sq_sum) * (1.0 - 1.0 / ratio_sum)


def weighted_wcss(disp, weights):
    """``sum_v weights_v**2 * disp_v``."""
    D = np.asarray(disp, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64)
    if D.shape != w.shape:
        raise LengthMismatchError(f"{D.size} dispersions vs {w.size} weights")
    return float(np.sum(w * w * D))


def harmonic_objective(disp):
    """``1 / sum_j (1 / D_j)``, the minimum of :func:`weighted_wcss` over the simplex."""
    D = _check_dispersion(disp)
    return float(1.0 / np.sum(1.0 / D))


def fir_rescale(data, part, iters=2, compound=False):
    """Rescale the columns of ``data`` by their FIR factors under the fixed ``part``.

    Each pass recomputes centroids and dispersions and scales every column;
    points are never reassigned.  By default a pass always works from the
    input matrix (``X' = alpha * X``), so any ``iters >= 1`` gives the same
    result as one pass.

    With ``compound=True`` each pass instead rescales the output of the
    previous one.  Because the rescaled dispersions are ``alpha**2 * D``,
    the second pass's factors are proportional to ``D`` and exactly undo
    the first: an even number of compounded passes is a uniform scaling,
    which leaves ASW, CH and DB unchanged.

    Returns:
        (rescaled matrix, factors) with ``X * factors`` equal to the
        rescaled matrix; all ones when ``iters == 0``.
    """
    X = as_matrix(data)
    part = as_partition(part, X.shape[0])
    if iters < 0:
        raise FirClusterError("iters must be non-negative")
    total = np.ones(X.shape[1])
    current = X
    for _ in range(iters):
        source = current if compound else X
        cents = compute_centroids(source, part)
        alpha = fir_weights(feature_dispersion(source, part, cents))
        current = source * alpha
        total = total * alpha if compound else alpha
    return current.copy() if current is X else current, total


def check_noise_immunity(disp, huge):
    """Weighted objective at the FIR optimum before and after appending a
    feature with dispersion ``huge``."""
    D = _check_dispersion(disp)
    if not (np.isfinite(huge) and huge > 0):
        raise FirClusterError("huge must be a positive finite dispersion")
    D_aug = np.append(D, huge)
    return (
        weighted_wcss(D, fir_weights(D)),
        weighted_wcss(D_aug, fir_weights(D_aug)),
    )
