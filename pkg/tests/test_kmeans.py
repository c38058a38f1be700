import numpy as np
import pytest

from fircluster.errors import DegenerateDataError
from fircluster.kmeans import child_seed, kmeans_lloyd, kmeanspp_init, run_kmeanspp
from fircluster.synthgen import GenConfig, generate_blobs
from fircluster.validity import adjusted_rand_index, wcss

from . import oracles

LINE = np.array([[0.0], [1.0], [10.0], [11.0]])


def test_lloyd_hand_example():
    res = kmeans_lloyd(LINE, [[1.0], [10.0]])
    assert res.labels.tolist() == [0, 0, 1, 1]
    np.testing.assert_array_equal(res.centroids.ravel(), [0.5, 10.5])
    assert res.wcss == 1.0
    assert res.iterations >= 1 and res.converged


def test_lloyd_k_equals_n():
    res = kmeans_lloyd(LINE, LINE)
    assert res.wcss == 0.0
    assert sorted(res.labels.tolist()) == [0, 1, 2, 3]


def test_lloyd_single_cluster_closed_form():
    X = np.random.default_rng(2).normal(size=(40, 3))
    res = kmeans_lloyd(X, X[:1])
    np.testing.assert_allclose(res.centroids[0], X.mean(axis=0), rtol=1e-12)
    assert res.wcss == pytest.approx(((X - X.mean(axis=0)) ** 2).sum(), rel=1e-12)


def test_lloyd_objective_non_increasing_and_matches_wcss():
    rng = np.random.default_rng(7)
    for _ in range(100):
        n, m, k = rng.integers(5, 60), rng.integers(1, 5), rng.integers(1, 6)
        X = rng.normal(size=(n, m))
        init = X[rng.choice(n, k, replace=False)]
        res = kmeans_lloyd(X, init)
        h = np.array(res.history)
        assert np.all(np.diff(h) <= 1e-12 * h[:-1])
        assert res.wcss == pytest.approx(wcss(X, res.partition), rel=1e-12)


def test_lloyd_refills_empty_cluster():
    X = np.array([[0.0], [0.1], [0.2], [5.0], [5.1]])
    res = kmeans_lloyd(X, [[0.0], [5.0], [100.0]])
    assert res.partition.k == 3
    assert np.all(res.partition.sizes() >= 1)


def test_lloyd_iteration_cap():
    X = np.random.default_rng(0).normal(size=(200, 2))
    res = kmeans_lloyd(X, X[:5], max_iter=1)
    assert res.iterations == 1 and not res.converged


def test_lloyd_ties_go_to_lowest_index():
    res = kmeans_lloyd(np.array([[0.0], [2.0], [1.0]]), [[0.0], [2.0]], max_iter=1)
    assert res.labels.tolist() == [0, 1, 0]


def test_kmeanspp_forced_selection():
    X = np.array([[0.0], [10.0]])
    for seed in range(20):
        assert sorted(kmeanspp_init(X, 2, seed).ravel().tolist()) == [0.0, 10.0]


def test_kmeanspp_single_centroid_is_a_data_point():
    X = np.random.default_rng(1).normal(size=(10, 2))
    for seed in range(5):
        c = kmeanspp_init(X, 1, seed)
        assert any(np.array_equal(c[0], row) for row in X)


def test_kmeanspp_distinct_rows():
    X = np.random.default_rng(4).normal(size=(30, 2))
    c = kmeanspp_init(X, 10, 3)
    assert np.unique(c, axis=0).shape[0] == 10


def test_kmeanspp_degenerate():
    with pytest.raises(DegenerateDataError):
        kmeanspp_init(np.array([[1.0], [1.0], [2.0]]), 3, 0)


def test_kmeanspp_frequencies_small():
    pts = [[0.0], [1.0], [3.0]]
    probs = oracles.kmeanspp_probabilities(pts)
    trials = 20000
    counts = {}
    for s in range(trials):
        c = kmeanspp_init(np.array(pts), 2, s).ravel()
        key = (pts.index([c[0]]), pts.index([c[1]]))
        counts[key] = counts.get(key, 0) + 1
    for key, p in probs.items():
        sd = np.sqrt(trials * p * (1 - p))
        assert abs(counts.get(key, 0) - trials * p) <= 4 * sd


def test_run_kmeanspp_deterministic():
    X = np.random.default_rng(9).normal(size=(100, 3))
    a = run_kmeanspp(X, 4, 12345)
    b = run_kmeanspp(X, 4, 12345)
    assert a.labels.tobytes() == b.labels.tobytes()
    assert a.centroids.tobytes() == b.centroids.tobytes()
    assert a.wcss == b.wcss and a.iterations == b.iterations


def test_run_kmeanspp_k_equals_n():
    assert run_kmeanspp(LINE, 4, 0).wcss == 0.0


def test_run_kmeanspp_recovers_tight_blobs():
    ds = generate_blobs(GenConfig(300, 4, 3, sigma=0.01, seed=2))
    for seed in range(5):
        res = run_kmeanspp(ds.data.values, 3, seed)
        assert adjusted_rand_index(ds.truth.labels, res.labels) == 1.0


def test_child_seed_stable_and_distinct():
    assert child_seed(1, "a", 0) == child_seed(1, "a", 0)
    seeds = {child_seed(1, "a", r) for r in range(1000)}
    assert len(seeds) == 1000
    assert child_seed(1, "a", 0) != child_seed(2, "a", 0)
    assert 0 <= child_seed(0) < 2**64
