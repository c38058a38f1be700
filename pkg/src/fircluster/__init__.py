"""Cluster validity indices with Feature Importance Rescaling (FIR)."""

from .data import (
    Dataset,
    Partition,
    compute_centroids,
    feature_dispersion,
    minmax_normalize,
    read_dataset_csv,
    write_dataset_csv,
)
from .errors import FirClusterError
from .experiment import aggregate, pca_project, pearson, run_experiment, run_trials, spearman
from .fir import check_noise_immunity, fir_rescale, fir_weights, weighted_wcss
from .kmeans import ClusteringResult, kmeans_lloyd, kmeanspp_init, run_kmeanspp
from .synthgen import GenConfig, LabelledDataset, add_noise_features, generate_blobs, generate_dataset
from .validity import (
    adjusted_rand_index,
    asw,
    calinski_harabasz,
    davies_bouldin,
    evaluate,
    silhouette_point,
    silhouette_samples,
    wcss,
)

__version__ = "0.1.0"
