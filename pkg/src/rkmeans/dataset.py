"""Numeric datasets: UCI presets, CSV-style loading, normalization, synthetic blobs."""

from __future__ import annotations

import logging
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import DatasetError, ParameterError

log = logging.getLogger(__name__)

NORMALIZE_MODES = ("none", "minmax", "zscore")


@dataclass(frozen=True)
class Dataset:
    """An ``n x p`` matrix of finite reals plus optional class labels.

    ``features`` is stored read-only so instances can be shared freely.
    ``meta`` holds provenance (source path, row count as read from the file).
    """

    features: np.ndarray
    labels: Optional[tuple] = None
    name: str = "dataset"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        x = np.array(self.features, dtype=float, copy=True)
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] < 1:
            raise DatasetError(f"features must be a non-empty 2-D matrix, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise DatasetError("features contain NaN or infinite values")
        x.setflags(write=False)
        object.__setattr__(self, "features", x)
        if self.labels is not None:
            labels = tuple(str(v) for v in self.labels)
            if len(labels) != x.shape[0]:
                raise DatasetError(f"{len(labels)} labels for {x.shape[0]} objects")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def p(self) -> int:
        return self.features.shape[1]

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (self.name == other.name and self.labels == other.labels
                and self.features.shape == other.features.shape
                and np.array_equal(self.features, other.features))

    def __hash__(self):
        return hash((self.name, self.features.shape, self.features.tobytes()))

    def label_codes(self) -> np.ndarray:
        """Integer codes for ``labels`` in first-appearance order."""
        if self.labels is None:
            raise DatasetError(f"{self.name} has no labels")
        codes = {}
        return np.array([codes.setdefault(v, len(codes)) for v in self.labels])


@dataclass(frozen=True)
class DatasetPreset:
    """Column layout of a delimited text file.

    ``delimiter=None`` splits on runs of whitespace. ``label_col`` and the
    entries of ``drop_cols`` may be negative (counted from the end).
    """

    name: str
    delimiter: Optional[str] = ","
    label_col: Optional[int] = None
    drop_cols: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "drop_cols", tuple(sorted(set(self.drop_cols))))
        if self.label_col is not None and self.label_col in self.drop_cols:
            raise ParameterError(f"label column {self.label_col} is also listed as dropped")


PRESETS = {
    "iris": DatasetPreset("iris", delimiter=",", label_col=-1),
    "wine": DatasetPreset("wine", delimiter=",", label_col=0),
    "ecoli": DatasetPreset("ecoli", delimiter=None, label_col=-1, drop_cols=(0,)),
    "yeast": DatasetPreset("yeast", delimiter=None, label_col=-1, drop_cols=(0,)),
}


def get_preset(name: str) -> DatasetPreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ParameterError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def _split(line: str, delimiter: Optional[str]) -> list:
    if delimiter is None:
        return line.split()
    return [cell.strip() for cell in line.split(delimiter)]


def load_csv(path, preset: DatasetPreset | str = "custom", name: Optional[str] = None) -> Dataset:
    """Parse a delimited text file into a :class:`Dataset`.

    Blank lines are skipped (UCI files end with some). Row order is kept.
    The row count actually read is recorded in ``meta["rows"]``.
    """
    if isinstance(preset, str):
        preset = DatasetPreset("custom") if preset == "custom" else get_preset(preset)
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such data file: {path}")
    text = path.read_text()

    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        cells = _split(line, preset.delimiter)
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise DatasetError(f"{path}: row {lineno} has {len(cells)} columns, expected {width}")
        rows.append((lineno, cells))
    if not rows:
        raise DatasetError(f"{path}: file is empty")

    def resolve(idx):
        j = idx + width if idx < 0 else idx
        if not 0 <= j < width:
            raise ParameterError(f"column index {idx} out of range for {width} columns")
        return j

    label_col = None if preset.label_col is None else resolve(preset.label_col)
    dropped = {resolve(j) for j in preset.drop_cols}
    if label_col is not None and label_col in dropped:
        raise ParameterError(f"label column {preset.label_col} is also listed as dropped")
    keep = [j for j in range(width) if j != label_col and j not in dropped]
    if not keep:
        raise DatasetError(f"{path}: no feature columns left after dropping label/dropped columns")

    features = np.empty((len(rows), len(keep)))
    for r, (lineno, cells) in enumerate(rows):
        for c, j in enumerate(keep):
            try:
                features[r, c] = float(cells[j])
            except ValueError:
                raise DatasetError(
                    f"{path}: row {lineno}, column {j + 1}: non-numeric value {cells[j]!r}") from None
    labels = None if label_col is None else [cells[label_col] for _, cells in rows]
    if not np.all(np.isfinite(features)):
        raise DatasetError(f"{path}: non-finite feature value")

    dataset_name = name or (preset.name if preset.name != "custom" else path.stem)
    log.debug("loaded %s: %d rows x %d features", path, len(rows), len(keep))
    return Dataset(features, labels, dataset_name,
                   meta={"source": str(path), "rows": len(rows), "preset": preset.name})


def normalize(d: Dataset, mode: str = "none") -> Dataset:
    """Rescale columns: ``minmax`` to [0, 1], ``zscore`` to mean 0 / population sd 1.

    Constant columns map to 0 under both modes (with a warning for zscore).
    """
    if mode == "none":
        return d
    x = d.features
    if mode == "minmax":
        lo, hi = x.min(axis=0), x.max(axis=0)
        span = hi - lo
        out = np.zeros_like(x)
        ok = span > 0
        out[:, ok] = (x[:, ok] - lo[ok]) / span[ok]
    elif mode == "zscore":
        mean = x.mean(axis=0)
        sd = x.std(axis=0)  # ddof=0: population sd
        out = np.zeros_like(x)
        ok = sd > 0
        if not ok.all():
            warnings.warn(f"{d.name}: constant column(s) {np.flatnonzero(~ok).tolist()} set to 0",
                          RuntimeWarning, stacklevel=2)
        out[:, ok] = (x[:, ok] - mean[ok]) / sd[ok]
    else:
        raise ParameterError(f"unknown normalize mode {mode!r}; choose from {NORMALIZE_MODES}")
    return Dataset(out, d.labels, d.name, meta={**d.meta, "normalize": mode})


def make_blobs(k: int, per_cluster: int, p: int = 2, separation: float = 10.0,
               spread: float = 1.0, seed: int = 0, max_tries: int = 1000) -> Dataset:
    """Isotropic Gaussian blobs with centers pairwise at least ``separation`` apart.

    Centers are drawn uniformly from a cube (rejection sampling), then each
    blob gets ``per_cluster`` points ``center + spread * N(0, I)``. Labels are
    blob indices. Uses numpy's PCG64 generator, so a seed reproduces exactly.
    """
    if k < 1 or per_cluster < 1 or p < 1:
        raise ParameterError("k, per_cluster and p must be >= 1")
    if separation <= 0 or spread < 0:
        raise ParameterError("separation must be > 0 and spread >= 0")
    rng = np.random.default_rng(seed)
    side = 2.0 * separation * k ** (1.0 / p)
    centers = []
    tries = 0
    while len(centers) < k:
        c = rng.uniform(0.0, side, size=p)
        if all(np.linalg.norm(c - o) >= separation for o in centers):
            centers.append(c)
            continue
        tries += 1
        if tries > max_tries:
            raise ParameterError(f"could not place {k} centers {separation} apart in {max_tries} tries")
    centers = np.array(centers)
    labels = np.repeat(np.arange(k), per_cluster)
    x = centers[labels] + spread * rng.standard_normal((k * per_cluster, p))
    return Dataset(x, labels.tolist(), f"blobs-k{k}-s{seed}",
                   meta={"centers": centers.tolist(), "seed": seed})
