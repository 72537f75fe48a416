"""Manhattan, Euclidean and Chebyshev distances and pairwise distance matrices."""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

from .errors import ParameterError

METRICS = ("manhattan", "euclidean", "chebyshev")
_SCIPY_NAMES = {"manhattan": "cityblock", "euclidean": "euclidean", "chebyshev": "chebyshev"}


def check_metric(metric: str) -> str:
    if metric not in METRICS:
        raise ParameterError(f"unknown metric {metric!r}; choose from {METRICS}")
    return metric


def norm(metric: str, v: np.ndarray, axis: int = -1) -> np.ndarray:
    """Length of ``v`` (or of each vector along ``axis``) under ``metric``."""
    a = np.abs(v)
    if metric == "manhattan":
        return a.sum(axis=axis)
    if metric == "euclidean":
        return np.sqrt((a * a).sum(axis=axis))
    if metric == "chebyshev":
        return a.max(axis=axis)
    raise ParameterError(f"unknown metric {metric!r}; choose from {METRICS}")


def distance(metric: str, x, y) -> float:
    """``d(x, y)`` for two p-vectors.

    >>> distance("manhattan", [0, 0], [3, 4]), distance("chebyshev", [0, 0], [3, 4])
    (7.0, 4.0)
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape or x.size == 0:
        raise ParameterError(f"dimension mismatch: {x.size} vs {y.size}")
    return float(norm(metric, x - y))


def cross(metric: str, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``len(a) x len(b)`` matrix of distances between the rows of ``a`` and ``b``."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    if a.shape[1] != b.shape[1]:
        raise ParameterError(f"dimension mismatch: {a.shape[1]} vs {b.shape[1]}")
    return cdist(a, b, _SCIPY_NAMES[check_metric(metric)])


def pairwise(metric: str, d) -> np.ndarray:
    """Symmetric ``n x n`` distance matrix of a Dataset (or a raw feature matrix)."""
    x = getattr(d, "features", d)
    m = cross(check_metric(metric), x, x)
    # exact symmetry and zero diagonal regardless of float ordering
    m = np.triu(m, 1)
    return m + m.T
