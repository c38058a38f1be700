"""Gaussian-blob datasets with optional uniform-noise features.

Mirrors the usual ``make_blobs`` defaults: centres uniform in the box
``[-10, 10]^m``, isotropic clusters, sizes as equal as possible and points
shuffled.  Noise columns are i.i.d. uniform on the same box.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace

import numpy as np

from .data import INFORMATIVE, NOISE, Dataset, Partition
from .errors import FirClusterError
from .kmeans import child_seed, make_rng

CENTER_BOX = (-10.0, 10.0)
NOISE_BOX = (-10.0, 10.0)


@dataclass(frozen=True)
class GenConfig:
    n: int
    m: int
    k: int
    sigma: float = 1.0
    noise: int = 0
    seed: int = 0

    def __post_init__(self):
        if not self.n >= self.k >= 1:
            raise FirClusterError(f"need n >= k >= 1, got n={self.n}, k={self.k}")
        if self.m < 1:
            raise FirClusterError("need at least one informative feature")
        if not self.sigma > 0:
            raise FirClusterError("sigma must be positive")
        if self.noise < 0:
            raise FirClusterError("noise feature count must be non-negative")

    @property
    def config_id(self):
        """Table-style label, e.g. ``1000x6-3_6NF_s1``."""
        tag = f"{self.n}x{self.m}-{self.k}"
        if self.noise:
            tag += f"_{self.noise}NF"
        return f"{tag}_s{self.sigma:g}"

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, record):
        keys = {"n", "m", "k", "sigma", "noise", "seed"}
        unknown = set(record) - keys - {"id"}
        if unknown:
            raise FirClusterError(f"unknown config fields: {sorted(unknown)}")
        return cls(**{key: record[key] for key in keys if key in record})

    def with_seed(self, seed):
        return replace(self, seed=seed)


@dataclass(frozen=True)
class LabelledDataset:
    data: Dataset
    truth: Partition
    centers: np.ndarray

    @property
    def n_noise(self):
        return sum(kind == NOISE for kind in self.data.feature_kinds)


def generate_blobs(cfg):
    rng = make_rng(cfg.seed)
    lo, hi = CENTER_BOX
    centers = rng.uniform(lo, hi, size=(cfg.k, cfg.m))
    sizes = np.full(cfg.k, cfg.n // cfg.k)
    sizes[: cfg.n % cfg.k] += 1
    labels = np.repeat(np.arange(cfg.k), sizes)
    X = centers[labels] + rng.normal(scale=cfg.sigma, size=(cfg.n, cfg.m))
    order = rng.permutation(cfg.n)
    return LabelledDataset(
        data=Dataset(X[order], (INFORMATIVE,) * cfg.m),
        truth=Partition(labels[order], cfg.k),
        centers=centers,
    )


def add_noise_features(ds, q, seed):
    """Append ``q`` uniform-noise columns; the original columns are untouched."""
    if q < 0:
        raise FirClusterError("noise feature count must be non-negative")
    if q == 0:
        return ds
    lo, hi = NOISE_BOX
    noise = make_rng(seed).uniform(lo, hi, size=(ds.data.n, q))
    values = np.hstack([ds.data.values, noise])
    kinds = ds.data.feature_kinds + (NOISE,) * q
    return LabelledDataset(Dataset(values, kinds), ds.truth, ds.centers)


def generate_dataset(cfg):
    """Blobs plus ``cfg.noise`` noise columns, all derived from ``cfg.seed``."""
    ds = generate_blobs(cfg)
    return add_noise_features(ds, cfg.noise, child_seed(cfg.seed, "noise"))
