"""Partitional clustering with random, static/dynamic weighted and renovated K-Means."""

from .clustering import (ALGORITHMS, ClusteringResult, ClusterModel, InitStrategy,
                         WeightStrategy, assign, dynamic_weights, run, run_algorithm,
                         update_centroids)
from .dataset import PRESETS, Dataset, DatasetPreset, load_csv, make_blobs, normalize
from .distance import METRICS, distance, pairwise
from .errors import DatasetError, DegenerateError, ParameterError, RkmeansError
from .initseed import InitScore, random_init, renovated_init
from .validity import (DbBreakdown, davies_bouldin, db_index, dispersion,
                       partition_agreement, within_cluster_sse)

__version__ = "0.1.0"
