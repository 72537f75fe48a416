"""Cluster validity: Davies-Bouldin index, within-cluster SSE, adjusted Rand index."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, ParameterError

DB_VARIANTS = ("paper", "standard")


@dataclass(frozen=True)
class DbBreakdown:
    """Intermediate quantities of a Davies-Bouldin evaluation.

    ``similarity[i, j] = (dispersions[i] + dispersions[j]) / separation[i, j]``
    (diagonal set to NaN), ``worst[i]`` is the row maximum off the diagonal and
    ``index`` is the mean of ``worst``.
    """

    dispersions: np.ndarray
    separation: np.ndarray
    similarity: np.ndarray
    worst: np.ndarray
    index: float
    variant: str


def _features(d):
    return np.asarray(getattr(d, "features", d), dtype=float)


def dispersion(points, centroid) -> float:
    """Root-mean-square Euclidean distance of ``points`` to ``centroid``."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[0] == 0:
        raise DegenerateError("dispersion of an empty cluster")
    return float(np.sqrt(((pts - np.asarray(centroid, dtype=float)) ** 2).sum(axis=1).mean()))


def davies_bouldin(d, assignments, centroids, variant: str = "paper") -> DbBreakdown:
    """Davies-Bouldin index with its breakdown.

    ``variant="paper"`` separates clusters by the *squared* Euclidean centroid
    distance, ``"standard"`` by the plain one. Dispersion is the RMS distance
    to the centroid in both (scikit-learn uses the mean distance instead).
    """
    if variant not in DB_VARIANTS:
        raise ParameterError(f"unknown DB variant {variant!r}; choose from {DB_VARIANTS}")
    x = _features(d)
    labels = np.asarray(assignments)
    c = np.atleast_2d(np.asarray(centroids, dtype=float))
    k = c.shape[0]
    if k < 2:
        raise ParameterError("Davies-Bouldin index needs at least 2 clusters")
    if labels.shape != (x.shape[0],):
        raise ParameterError("one assignment per object is required")

    disp = np.array([dispersion(x[labels == i], c[i]) for i in range(k)])
    sq = ((c[:, None, :] - c[None, :, :]) ** 2).sum(axis=2)
    sep = sq if variant == "paper" else np.sqrt(sq)
    off = ~np.eye(k, dtype=bool)
    if np.any(sep[off] == 0):
        i, j = np.argwhere((sep == 0) & off)[0]
        raise DegenerateError(f"centroids {i} and {j} coincide; Davies-Bouldin index undefined")
    sim = np.full((k, k), np.nan)
    sim[off] = ((disp[:, None] + disp[None, :]) / np.where(off, sep, 1.0))[off]
    worst = np.nanmax(sim, axis=1)
    return DbBreakdown(disp, sep, sim, worst, float(worst.mean()), variant)


def db_index(d, assignments, centroids, variant: str = "paper") -> float:
    return davies_bouldin(d, assignments, centroids, variant).index


def within_cluster_sse(d, assignments, centroids) -> float:
    """Sum of squared Euclidean distances of objects to their assigned centroid."""
    x = _features(d)
    c = np.atleast_2d(np.asarray(centroids, dtype=float))
    return float(((x - c[np.asarray(assignments)]) ** 2).sum())


def _pairs(counts: np.ndarray) -> float:
    return float((counts * (counts - 1) / 2).sum())


def partition_agreement(a, b) -> float:
    """Adjusted Rand index of two labelings (1.0 iff equal up to relabeling)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 1:
        raise ParameterError(f"labelings differ in length: {a.shape} vs {b.shape}")
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)
    index = _pairs(table)
    rows = _pairs(table.sum(axis=1))
    cols = _pairs(table.sum(axis=0))
    total = _pairs(np.array([a.size]))
    expected = rows * cols / total if total else 0.0
    best = (rows + cols) / 2
    if best == expected:
        # both partitions trivial (single cluster or all singletons)
        return 1.0
    return (index - expected) / (best - expected)
