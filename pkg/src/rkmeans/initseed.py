"""Initial centroid selection: uniform random and the deterministic renovated scheme."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distance import pairwise
from .errors import DegenerateError, ParameterError


@dataclass(frozen=True)
class InitScore:
    """Per-object scores of the renovated scheme.

    ``normalized[i, j] = d_ij / sum_i d_ij`` (each column sums to 1) and
    ``scores[j] = sum_i normalized[i, j] ** 2``.
    """

    scores: np.ndarray
    normalized: np.ndarray
    order: np.ndarray


def _features(d):
    return np.asarray(getattr(d, "features", d), dtype=float)


def _check_k(n: int, k: int):
    if not 1 <= k <= n:
        raise ParameterError(f"k={k} must satisfy 1 <= k <= n={n}")


def random_init(d, k: int, seed: int) -> np.ndarray:
    """Copies of ``k`` distinct rows drawn uniformly without replacement (PCG64)."""
    x = _features(d)
    _check_k(x.shape[0], k)
    rng = np.random.default_rng(seed)
    idx = rng.choice(x.shape[0], size=k, replace=False)
    return x[idx].copy()


def renovated_scores(d, metric: str = "euclidean") -> InitScore:
    x = _features(d)
    if x.shape[0] < 2:
        raise ParameterError("renovated initialization needs at least 2 objects")
    dist = pairwise(metric, x)
    colsum = dist.sum(axis=0)
    if np.any(colsum == 0):
        # a zero column sum means that object coincides with every other one
        raise DegenerateError("all objects are identical; pairwise distances are all zero")
    normalized = dist / colsum
    scores = (normalized ** 2).sum(axis=0)
    order = np.argsort(scores, kind="stable")
    return InitScore(scores, normalized, order)


def renovated_init(d, k: int, metric: str = "euclidean") -> tuple[np.ndarray, InitScore]:
    """Deterministic seeding: the ``k`` objects with the smallest column score.

    Distances are column-normalized, squared and summed per object; objects
    are sorted once in ascending order and ties go to the lower row index.
    Centroids are returned in that ascending-score order.
    """
    x = _features(d)
    _check_k(x.shape[0], k)
    score = renovated_scores(x, metric)
    return x[score.order[:k]].copy(), score


def initial_centroids(d, k: int, kind: str, seed: int = 0, metric: str = "euclidean") -> np.ndarray:
    if kind == "random":
        return random_init(d, k, seed)
    if kind == "renovated":
        return renovated_init(d, k, metric)[0]
    raise ParameterError(f"unknown init strategy {kind!r}")
