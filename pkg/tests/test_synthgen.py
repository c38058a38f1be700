import numpy as np
import pytest
from scipy.stats import chi2

from fircluster.data import NOISE, feature_dispersion, minmax_normalize
from fircluster.errors import FirClusterError
from fircluster.kmeans import kmeans_lloyd, run_kmeanspp
from fircluster.synthgen import GenConfig, add_noise_features, generate_blobs, generate_dataset
from fircluster.validity import adjusted_rand_index


def test_degenerate_sigma_collapses_to_centers():
    ds = generate_blobs(GenConfig(60, 3, 4, sigma=1e-9, seed=3))
    np.testing.assert_allclose(ds.data.values, ds.centers[ds.truth.labels], atol=1e-6)
    res = kmeans_lloyd(ds.data.values, ds.centers)
    assert adjusted_rand_index(ds.truth.labels, res.labels) == 1.0


def test_even_split():
    ds = generate_blobs(GenConfig(1000, 2, 10, seed=0))
    assert ds.truth.sizes().tolist() == [100] * 10
    sizes = generate_blobs(GenConfig(103, 2, 10, seed=0)).truth.sizes()
    assert sizes.max() - sizes.min() <= 1 and sizes.sum() == 103


def test_centers_inside_box():
    ds = generate_blobs(GenConfig(50, 5, 5, seed=9))
    assert np.all(np.abs(ds.centers) <= 10)


def test_cluster_variance_chi_square():
    sigma, per = 2.0, 100
    ds = generate_blobs(GenConfig(per * 6, 10, 6, sigma=sigma, seed=21))
    lo, hi = chi2.ppf([0.005, 0.995], per - 1) * sigma**2 / (per - 1)
    outside = 0
    for l in range(6):
        rows = ds.data.values[ds.truth.labels == l]
        var = rows.var(axis=0, ddof=1)
        outside += int(np.sum((var < lo) | (var > hi)))
    # 60 cells at 1% each; more than 3 misses would be a 0.3% event
    assert outside <= 3


def test_noise_zero_is_identity():
    ds = generate_blobs(GenConfig(20, 2, 2, seed=1))
    assert add_noise_features(ds, 0, 5) is ds


def test_noise_preserves_columns_and_truth():
    ds = generate_blobs(GenConfig(30, 4, 3, seed=1))
    out = add_noise_features(ds, 4, 99)
    assert out.data.m == 8
    assert out.data.values[:, :4].tobytes() == ds.data.values.tobytes()
    assert out.truth is ds.truth
    assert out.data.feature_kinds[4:] == (NOISE,) * 4
    assert out.n_noise == 4
    assert np.all(np.abs(out.data.values[:, 4:]) <= 10)


def test_noise_mean():
    ds = add_noise_features(generate_blobs(GenConfig(1000, 1, 1, seed=0)), 5, 7)
    sd = 20 / np.sqrt(12 * 1000)
    assert np.all(np.abs(ds.data.values[:, 1:].mean(axis=0)) <= 3 * sd)


def test_deterministic():
    cfg = GenConfig(200, 4, 3, sigma=2.0, noise=2, seed=42)
    a, b = generate_dataset(cfg), generate_dataset(cfg)
    assert a.data.values.tobytes() == b.data.values.tobytes()
    assert a.truth.labels.tobytes() == b.truth.labels.tobytes()
    assert generate_dataset(cfg.with_seed(43)).data.values.tobytes() != a.data.values.tobytes()


def test_config_validation_and_ids():
    with pytest.raises(FirClusterError):
        GenConfig(2, 2, 3)
    with pytest.raises(FirClusterError):
        GenConfig(10, 2, 3, sigma=0)
    assert GenConfig(1000, 6, 3, 1, 6).config_id == "1000x6-3_6NF_s1"
    assert GenConfig(1000, 6, 3, 2.0, 0).config_id == "1000x6-3_s2"
    cfg = GenConfig.from_dict({"n": 10, "m": 2, "k": 2, "sigma": 2, "noise": 1})
    assert cfg == GenConfig(10, 2, 2, 2, 1, 0)
    with pytest.raises(FirClusterError):
        GenConfig.from_dict({"n": 10, "m": 2, "k": 2, "bogus": 1})


def test_kmeanspp_recovers_clean_instances():
    ds = generate_dataset(GenConfig(1000, 6, 3, sigma=1.0, seed=5))
    X = minmax_normalize(ds.data.values)
    aris = [adjusted_rand_index(ds.truth.labels, run_kmeanspp(X, 3, s).labels) for s in range(20)]
    assert np.median(aris) > 0.9


def test_noise_features_are_more_dispersed():
    wins = 0
    for seed in range(20):
        ds = generate_dataset(GenConfig(500, 6, 3, sigma=1.0, noise=3, seed=seed))
        D = feature_dispersion(minmax_normalize(ds.data.values), ds.truth)
        wins += bool(np.all(D[6:] > np.median(D[:6])))
    assert wins >= 18
