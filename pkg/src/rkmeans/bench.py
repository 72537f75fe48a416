"""Benchmark sweeps over the four algorithms and their CSV / JSON / plot-data reports.

Four sweeps mirror the classic comparison tables:

* ``distance-sweep``: plain K-Means under each metric, K over a range (DB index)
* ``algorithms``: all four algorithms on several datasets at one K (DB index)
* ``time``: wall-clock per algorithm over a list of K
* ``iterations``: iteration counts per algorithm over a range of K

Random-init algorithms are repeated over seeds; renovated K-Means is
deterministic (the ``algorithms`` sweep runs it once per dataset).
"""

from __future__ import annotations

import csv
import io
import json
import logging
import platform
import statistics
from dataclasses import asdict, dataclass, field, fields
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .clustering import ALGORITHMS, run_algorithm
from .distance import METRICS
from .errors import ParameterError, RkmeansError
from .validity import db_index

log = logging.getLogger(__name__)

SCHEMA = 1
KINDS = ("distance-sweep", "algorithms", "time", "iterations")
ALGORITHM_ORDER = ("kmeans", "swkmeans", "dwkmeans", "renovated")
DEFAULT_K_LIST = (3, 6, 9, 12, 15)


_NUM = {"type": "number"}
_RECORD_SCHEMA = {
    "type": "object",
    "required": ["dataset", "algorithm", "metric", "k", "seed", "db_index", "db_variant",
                 "iterations", "elapsed_ms", "converged", "normalize"],
    "properties": {
        "dataset": {"type": "string"},
        "algorithm": {"enum": list(ALGORITHM_ORDER)},
        "metric": {"enum": list(METRICS)},
        "k": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
        "db_index": _NUM,
        "db_variant": {"enum": ["paper", "standard"]},
        "iterations": {"type": "integer", "minimum": 1},
        "elapsed_ms": {"type": "number", "minimum": 0},
        "converged": {"type": "boolean"},
        "normalize": {"enum": ["none", "minmax", "zscore"]},
    },
    "additionalProperties": False,
}
_GRID_SCHEMA = {
    "type": "object",
    "required": ["stat", "row_key", "rows", "col_key", "columns", "values"],
    "properties": {"values": {"type": "array", "items": {"type": "array", "items": {"type": ["number", "null"]}}}},
}
#: JSON Schema (draft 2020-12) of the ``json`` report format.
REPORT_JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "kind", "partial", "error", "params", "environment", "records", "aggregates", "grids"],
    "properties": {
        "schema": {"const": SCHEMA},
        "kind": {"enum": list(KINDS)},
        "partial": {"type": "boolean"},
        "error": {"type": ["string", "null"]},
        "params": {"type": "object"},
        "environment": {"type": "object", "required": ["host", "timestamp"]},
        "records": {"type": "array", "items": _RECORD_SCHEMA},
        "aggregates": {"type": "array", "items": {"type": "object"}},
        "grids": {"type": "object", "additionalProperties": _GRID_SCHEMA},
    },
}


@dataclass
class BenchRecord:
    dataset: str
    algorithm: str
    metric: str
    k: int
    seed: int
    db_index: float
    db_variant: str
    iterations: int
    elapsed_ms: float
    converged: bool
    normalize: str

    def sort_key(self):
        return (self.dataset, ALGORITHM_ORDER.index(self.algorithm), METRICS.index(self.metric),
                self.k, self.seed)


RECORD_FIELDS = [f.name for f in fields(BenchRecord)]
GROUP_KEYS = ("dataset", "algorithm", "metric", "k")


def aggregate(records: Iterable[BenchRecord]) -> list[dict]:
    """Per (dataset, algorithm, metric, k) statistics over seeds."""
    groups: dict = {}
    for r in records:
        groups.setdefault(tuple(getattr(r, key) for key in GROUP_KEYS), []).append(r)
    out = []
    for key in sorted(groups, key=lambda g: (g[0], ALGORITHM_ORDER.index(g[1]), METRICS.index(g[2]), g[3])):
        rs = groups[key]
        db = [r.db_index for r in rs]
        it = [r.iterations for r in rs]
        ms = [r.elapsed_ms for r in rs]
        out.append({
            **dict(zip(GROUP_KEYS, key)),
            "runs": len(rs),
            "db_mean": statistics.fmean(db), "db_min": min(db), "db_max": max(db),
            "iter_mean": statistics.fmean(it), "iter_min": min(it), "iter_max": max(it),
            "ms_mean": statistics.fmean(ms), "ms_median": statistics.median(ms),
            "ms_min": min(ms), "ms_max": max(ms),
            "converged_frac": sum(r.converged for r in rs) / len(rs),
        })
    return out


def environment() -> dict:
    return {
        "host": platform.node(),
        "platform": platform.platform(),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


@dataclass
class BenchReport:
    kind: str
    records: list
    params: dict = field(default_factory=dict)
    environment: dict = field(default_factory=environment)
    partial: bool = False
    error: Optional[str] = None
    exit_code: int = field(default=0, repr=False, compare=False)

    def __post_init__(self):
        self.records = sorted(self.records, key=BenchRecord.sort_key)

    @property
    def aggregates(self) -> list[dict]:
        return aggregate(self.records)

    def grids(self) -> dict:
        """Table-shaped views of the aggregates, keyed by name; ``table`` is the main one."""
        agg = self.aggregates
        p = self.params
        if self.kind == "distance-sweep":
            return {"table": _grid(agg, "k", p["k_values"], "metric", list(p["metrics"]), "db_mean")}
        if self.kind == "algorithms":
            return {"table": _grid(agg, "dataset", p["datasets"], "algorithm", list(p["algorithms"]), "db_mean")}
        if self.kind == "time":
            table = _grid(agg, "k", p["k_values"], "algorithm", list(p["algorithms"]), "ms_median")
            return {"table": table, "relative": _relative(table)}
        if self.kind == "iterations":
            return {"table": _grid(agg, "k", p["k_values"], "algorithm", list(p["algorithms"]), "iter_mean"),
                    "min": _grid(agg, "k", p["k_values"], "algorithm", list(p["algorithms"]), "iter_min")}
        raise ParameterError(f"unknown report kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": self.kind,
            "partial": self.partial,
            "error": self.error,
            "params": self.params,
            "environment": self.environment,
            "records": [asdict(r) for r in self.records],
            "aggregates": self.aggregates,
            "grids": self.grids() if not self.partial else {},
        }


def _grid(agg, row_key, rows, col_key, cols, stat) -> dict:
    cells = {(a[row_key], a[col_key]): a[stat] for a in agg}
    return {"stat": stat, "row_key": row_key, "rows": list(rows), "col_key": col_key, "columns": cols,
            "values": [[cells.get((r, c)) for c in cols] for r in rows]}


def _relative(table: dict) -> dict:
    """Times divided by the plain K-Means time of the same row."""
    base = table["columns"].index("kmeans") if "kmeans" in table["columns"] else None
    values = []
    for row in table["values"]:
        ref = row[base] if base is not None else None
        values.append([v / ref if ref and v is not None else None for v in row])
    return {**table, "stat": "ms_median/kmeans", "values": values}


# -- sweeps ------------------------------------------------------------------

def _one(d, algorithm, metric, k, seed, cfg) -> BenchRecord:
    res = run_algorithm(d, k, algorithm, metric, seed, tol=cfg["tol"], max_iter=cfg["max_iter"],
                        static_weight=cfg["static_weight"])
    db = db_index(d, res.assignments, res.centroids, cfg["db_variant"]) if k >= 2 else float("nan")
    return BenchRecord(d.name, algorithm, metric, k, seed, db, cfg["db_variant"], res.iterations,
                       res.elapsed * 1000.0, res.converged, d.meta.get("normalize", "none"))


def _config(tol, max_iter, static_weight, db_variant) -> dict:
    return {"tol": tol, "max_iter": max_iter, "static_weight": static_weight, "db_variant": db_variant}


def _sweep(kind, cells, params) -> BenchReport:
    records = []
    try:
        for args in cells:
            records.append(_one(*args))
    except RkmeansError as exc:
        log.error("%s sweep aborted: %s", kind, exc)
        return BenchReport(kind, records, params, partial=True, error=f"{type(exc).__name__}: {exc}",
                           exit_code=exc.exit_code)
    return BenchReport(kind, records, params)


def _seed_list(seeds: int | Sequence[int]) -> list[int]:
    out = list(range(seeds)) if isinstance(seeds, int) else [int(s) for s in seeds]
    if not out:
        raise ParameterError("at least one seed is required")
    return out


def _check_ks(d, ks, lo=1):
    for k in ks:
        if not lo <= k <= d.n:
            raise ParameterError(f"k={k} outside [{lo}, n={d.n}] for {d.name}")


def bench_distance_sweep(d, k_values=range(2, 11), seeds=30, db_variant="paper",
                         metrics=METRICS, tol=1e-6, max_iter=300, static_weight=1.5) -> BenchReport:
    ks, seeds = list(k_values), _seed_list(seeds)
    _check_ks(d, ks, 2)
    cfg = _config(tol, max_iter, static_weight, db_variant)
    params = {"datasets": [d.name], "k_values": ks, "seeds": seeds, "metrics": list(metrics),
              "algorithms": ["kmeans"], **cfg}
    cells = ((d, "kmeans", m, k, s, cfg) for m in metrics for k in ks for s in seeds)
    return _sweep("distance-sweep", cells, params)


def bench_algorithms(datasets, k=5, seeds=30, db_variant="paper", metric="euclidean",
                     algorithms=ALGORITHM_ORDER, tol=1e-6, max_iter=300, static_weight=1.5) -> BenchReport:
    seeds = _seed_list(seeds)
    for d in datasets:
        _check_ks(d, [k], 2)
    cfg = _config(tol, max_iter, static_weight, db_variant)
    params = {"datasets": [d.name for d in datasets], "k_values": [k], "seeds": seeds,
              "metrics": [metric], "algorithms": list(algorithms), **cfg}

    def cells():
        for d in datasets:
            for a in algorithms:
                for s in (seeds[:1] if a == "renovated" else seeds):
                    yield d, a, metric, k, s, cfg
    return _sweep("algorithms", cells(), params)


def bench_time(d, k_values=DEFAULT_K_LIST, seeds=30, metric="euclidean", algorithms=ALGORITHM_ORDER,
               db_variant="paper", tol=1e-6, max_iter=300, static_weight=1.5) -> BenchReport:
    ks, seeds = list(k_values), _seed_list(seeds)
    _check_ks(d, ks)
    cfg = _config(tol, max_iter, static_weight, db_variant)
    params = {"datasets": [d.name], "k_values": ks, "seeds": seeds, "metrics": [metric],
              "algorithms": list(algorithms), **cfg}
    cells = ((d, a, metric, k, s, cfg) for k in ks for a in algorithms for s in seeds)
    return _sweep("time", cells, params)


def bench_iterations(d, k_values=range(2, 11), seeds=30, metric="euclidean", algorithms=ALGORITHM_ORDER,
                     db_variant="paper", tol=1e-6, max_iter=300, static_weight=1.5) -> BenchReport:
    ks, seeds = list(k_values), _seed_list(seeds)
    _check_ks(d, ks, 2)
    cfg = _config(tol, max_iter, static_weight, db_variant)
    params = {"datasets": [d.name], "k_values": ks, "seeds": seeds, "metrics": [metric],
              "algorithms": list(algorithms), **cfg}
    cells = ((d, a, metric, k, s, cfg) for k in ks for a in algorithms for s in seeds)
    return _sweep("iterations", cells, params)


# -- emission ----------------------------------------------------------------

def _cell(v):
    return "" if v is None else v


def to_csv(report: BenchReport) -> str:
    """Records, then a ``#aggregates`` block, then one ``#grid:<name>`` block per grid."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECORD_FIELDS)
    for r in report.records:
        w.writerow([getattr(r, f) for f in RECORD_FIELDS])
    agg = report.aggregates
    w.writerow(["#aggregates"])
    if agg:
        w.writerow(list(agg[0]))
        for a in agg:
            w.writerow(list(a.values()))
    for name, g in (report.grids() if not report.partial else {}).items():
        w.writerow([f"#grid:{name}", g["stat"]])
        w.writerow([f"{g['row_key']}\\{g['col_key']}", *g["columns"]])
        for row, vals in zip(g["rows"], g["values"]):
            w.writerow([row, *map(_cell, vals)])
    return buf.getvalue()


def to_json(report: BenchReport) -> str:
    return json.dumps(report.to_dict(), indent=2, allow_nan=True) + "\n"


def plot_series(report: BenchReport) -> dict:
    """``{series name: [(x, y), ...]}``, one series per line of the main table."""
    g = report.grids()["table"]
    series = {}
    for j, col in enumerate(g["columns"]):
        series[str(col)] = [(row, vals[j]) for row, vals in zip(g["rows"], g["values"]) if vals[j] is not None]
    return series


def emit(report: BenchReport, fmt: str, out) -> list[Path]:
    """Write ``report`` as ``csv``, ``json`` or ``plotdata``; returns the files written.

    For ``plotdata`` ``out`` is a directory receiving ``<kind>.<series>.csv``
    files with ``x,y`` columns.
    """
    out = Path(out)
    if fmt == "json":
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(to_json(report))
        return [out]
    if fmt == "csv":
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(to_csv(report))
        return [out]
    if fmt == "plotdata":
        if report.partial:
            raise ParameterError("no plot data for a partial report")
        out.mkdir(parents=True, exist_ok=True)
        g = report.grids()["table"]
        written = []
        for name, points in plot_series(report).items():
            path = out / f"{report.kind}.{name}.csv"
            with path.open("w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow([g["row_key"], g["stat"]])
                w.writerows(points)
            written.append(path)
        return written
    raise ParameterError(f"unknown format {fmt!r}; choose from csv, json, plotdata")


# -- loading -----------------------------------------------------------------

class ReportError(RkmeansError, ValueError):
    exit_code = 3


def _record(row: dict) -> BenchRecord:
    return BenchRecord(
        dataset=str(row["dataset"]), algorithm=str(row["algorithm"]), metric=str(row["metric"]),
        k=int(row["k"]), seed=int(row["seed"]), db_index=float(row["db_index"]),
        db_variant=str(row["db_variant"]), iterations=int(row["iterations"]),
        elapsed_ms=float(row["elapsed_ms"]),
        converged=row["converged"] if isinstance(row["converged"], bool) else row["converged"] == "True",
        normalize=str(row["normalize"]))


def _close(a, b) -> bool:
    if isinstance(a, str) or isinstance(b, str):
        return a == b
    if a is None or b is None:
        return a is b
    if np.isnan(a) and np.isnan(b):
        return True
    return abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))


def load_report(path) -> BenchReport:
    """Read a JSON report, checking the schema and that aggregates match the records."""
    data = json.loads(Path(path).read_text())
    if data.get("schema") != SCHEMA:
        raise ReportError(f"{path}: unsupported schema {data.get('schema')!r}")
    if data.get("kind") not in KINDS:
        raise ReportError(f"{path}: unknown report kind {data.get('kind')!r}")
    report = BenchReport(data["kind"], [_record(r) for r in data["records"]], data["params"],
                         data["environment"], data["partial"], data.get("error"))
    stored = data["aggregates"]
    fresh = report.aggregates
    if len(stored) != len(fresh) or any(
            set(s) != set(f) or not all(_close(s[key], f[key]) for key in f) for s, f in zip(stored, fresh)):
        raise ReportError(f"{path}: aggregates do not match the records")
    return report


def read_csv_records(path) -> list[BenchRecord]:
    """The per-run records of a CSV report (everything before ``#aggregates``)."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], []
    for row in rows[1:]:
        if row and row[0].startswith("#"):
            break
        body.append(_record(dict(zip(header, row))))
    return body
