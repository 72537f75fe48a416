"""Lloyd-style engine shared by K-Means, the weighted variants and renovated K-Means.

All four algorithms alternate *assign* (nearest centroid under a possibly
feature-weighted metric) and *update* (plain arithmetic means). They differ
only in the initial centroids and in the weight rows used while assigning:

========== ============ ==========================================
algorithm  init         weights
========== ============ ==========================================
kmeans     random       unit
swkmeans   random       static (every weight = 1.5)
dwkmeans   random       dynamic, recomputed from current centroids
renovated  renovated    unit
========== ============ ==========================================
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .distance import check_metric, cross, norm
from .errors import ParameterError
from .initseed import random_init, renovated_init
from .validity import within_cluster_sse

WEIGHT_KINDS = ("unit", "static", "dynamic")
ALGORITHMS = {
    "kmeans": ("random", "unit"),
    "swkmeans": ("random", "static"),
    "dwkmeans": ("random", "dynamic"),
    "renovated": ("renovated", "unit"),
}


@dataclass(frozen=True)
class WeightStrategy:
    kind: str = "unit"
    static_value: float = 1.5

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise ParameterError(f"unknown weight strategy {self.kind!r}; choose from {WEIGHT_KINDS}")

    def weights(self, centroids: np.ndarray) -> np.ndarray:
        if self.kind == "dynamic":
            return dynamic_weights(centroids)
        value = self.static_value if self.kind == "static" else 1.0
        return np.full(np.shape(centroids), value, dtype=float)


@dataclass(frozen=True)
class InitStrategy:
    """``random`` uses ``seed``; ``renovated`` ignores it and uses ``metric``."""

    kind: str = "random"
    seed: int = 0
    metric: str = "euclidean"

    def centroids(self, x: np.ndarray, k: int) -> np.ndarray:
        if self.kind == "random":
            return random_init(x, k, self.seed)
        if self.kind == "renovated":
            return renovated_init(x, k, self.metric)[0]
        raise ParameterError(f"unknown init strategy {self.kind!r}")


@dataclass
class ClusterModel:
    centroids: np.ndarray
    weights: np.ndarray
    metric: str = "euclidean"

    @property
    def k(self) -> int:
        return self.centroids.shape[0]


@dataclass
class ClusteringResult:
    assignments: np.ndarray
    centroids: np.ndarray
    iterations: int
    converged: bool
    inertia_history: list
    elapsed: float
    reseeds: int = 0
    history: Optional[list] = field(default=None, repr=False)

    @property
    def inertia(self) -> float:
        return self.inertia_history[-1]


def dynamic_weights(centroids) -> np.ndarray:
    """Row-wise ``w_ij = (s_i - c_ij) / s_i`` with ``s_i`` the sum of centroid ``i``.

    A row whose sum is exactly zero falls back to unit weights. Negative
    weights and weights above 1 are possible when a centroid has negative
    coordinates; they are returned as computed.
    """
    c = np.atleast_2d(np.asarray(centroids, dtype=float))
    s = c.sum(axis=1, keepdims=True)
    w = np.ones_like(c)
    ok = (s != 0).ravel()
    w[ok] = (s[ok] - c[ok]) / s[ok]
    return w


def _features(d):
    return np.asarray(getattr(d, "features", d), dtype=float)


def assign(d, model: ClusterModel) -> np.ndarray:
    """Index of the nearest centroid for every object, ties to the lower index.

    Object ``x`` is compared with centroid ``i`` through
    ``metric(w_i * (x - c_i))``, ``w_i`` being that centroid's weight row.
    """
    x = _features(d)
    c = np.asarray(model.centroids, dtype=float)
    if c.shape[1] != x.shape[1]:
        raise ParameterError(f"centroid dimension {c.shape[1]} != data dimension {x.shape[1]}")
    w = np.asarray(model.weights, dtype=float)
    if np.all(w == w.flat[0]):
        # one shared weight: scale both sides once
        dist = cross(model.metric, x * w.flat[0], c * w.flat[0])
    else:
        dist = np.empty((x.shape[0], c.shape[0]))
        for i in range(c.shape[0]):
            dist[:, i] = norm(model.metric, (x - c[i]) * w[i])
    return np.argmin(dist, axis=1)


def _means(x: np.ndarray, labels: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    counts = np.bincount(labels, minlength=k)
    sums = np.stack([np.bincount(labels, weights=col, minlength=k) for col in x.T], axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        return sums / counts[:, None], counts


def _update(x: np.ndarray, labels: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Means of each cluster after re-seeding empty ones.

    An empty cluster takes over the object farthest (Euclidean) from its own
    cluster mean, drawn only from clusters with more than one member; that
    object is moved to the empty cluster. Returns (centroids, labels, reseeds).
    """
    labels = np.array(labels, dtype=np.intp, copy=True)
    if labels.shape != (x.shape[0],) or labels.min() < 0 or labels.max() >= k:
        raise ParameterError(f"assignments must be {x.shape[0]} indices in [0, {k})")
    means, counts = _means(x, labels, k)
    reseeds = 0
    while np.any(counts == 0):
        empty = int(np.flatnonzero(counts == 0)[0])
        gap = ((x - means[labels]) ** 2).sum(axis=1)
        gap[counts[labels] <= 1] = -np.inf
        donor = int(np.argmax(gap))
        labels[donor] = empty
        reseeds += 1
        means, counts = _means(x, labels, k)
    return means, labels, reseeds


def update_centroids(d, assignments, k: int) -> np.ndarray:
    """Arithmetic mean of each cluster; empty clusters are re-seeded first."""
    return _update(_features(d), np.asarray(assignments), k)[0]


def _resolve_init(init, x: np.ndarray, k: int, seed: int) -> np.ndarray:
    if isinstance(init, InitStrategy):
        return init.centroids(x, k)
    if isinstance(init, str):
        return InitStrategy(init, seed).centroids(x, k)
    c = np.array(init, dtype=float, copy=True)
    if c.shape != (k, x.shape[1]):
        raise ParameterError(f"initial centroids must have shape {(k, x.shape[1])}, got {c.shape}")
    return c


def run(d, k: int, init: Union[str, InitStrategy, np.ndarray] = "random",
        metric: str = "euclidean", weights: Union[str, WeightStrategy] = "unit",
        tol: float = 1e-6, max_iter: int = 300, seed: int = 0,
        keep_history: bool = False) -> ClusteringResult:
    """Cluster ``d`` into ``k`` groups.

    Stops when the largest centroid displacement (Euclidean) is ``<= tol``,
    when assignments repeat those of the previous iteration, or after
    ``max_iter`` iterations; only the last case reports ``converged=False``.
    ``inertia_history`` holds the plain Euclidean SSE after every update,
    whatever the metric and weights. ``elapsed`` (seconds) covers
    initialization and the loop.
    """
    x = _features(d)
    n = x.shape[0]
    check_metric(metric)
    if not 1 <= k <= n:
        raise ParameterError(f"k={k} must satisfy 1 <= k <= n={n}")
    if tol < 0 or max_iter < 1:
        raise ParameterError("tol must be >= 0 and max_iter >= 1")
    if isinstance(weights, str):
        weights = WeightStrategy(weights)

    start = time.perf_counter()
    centroids = _resolve_init(init, x, k, seed)
    w = weights.weights(centroids)
    previous = None
    inertia = []
    history = [] if keep_history else None
    reseeds = 0
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        if weights.kind == "dynamic":
            w = dynamic_weights(centroids)
        labels = assign(x, ClusterModel(centroids, w, metric))
        new, labels, r = _update(x, labels, k)
        reseeds += r
        inertia.append(within_cluster_sse(x, labels, new))
        if history is not None:
            history.append(labels.copy())
        shift = float(np.max(np.sqrt(((new - centroids) ** 2).sum(axis=1))))
        centroids = new
        if shift <= tol or (previous is not None and np.array_equal(labels, previous)):
            converged = True
            break
        previous = labels
    elapsed = time.perf_counter() - start
    return ClusteringResult(labels, centroids, it, converged, inertia, elapsed, reseeds, history)


def run_algorithm(d, k: int, algorithm: str, metric: str = "euclidean", seed: int = 0,
                  tol: float = 1e-6, max_iter: int = 300, static_weight: float = 1.5,
                  keep_history: bool = False) -> ClusteringResult:
    """Run one of :data:`ALGORITHMS` by name."""
    try:
        init_kind, weight_kind = ALGORITHMS[algorithm]
    except KeyError:
        raise ParameterError(f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}") from None
    return run(d, k, InitStrategy(init_kind, seed), metric, WeightStrategy(weight_kind, static_weight),
               tol=tol, max_iter=max_iter, keep_history=keep_history)
