"""Command-line entry point: ``rkmeans cluster`` and ``rkmeans bench <sweep>``.

Exit codes: 0 success, 2 usage error, 3 input/output error (missing or
malformed file), 4 parameter inconsistent with the data (e.g. k > n),
5 numeric degeneracy (identical points, coincident centroids).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import bench
from .clustering import ALGORITHMS, run_algorithm
from .dataset import NORMALIZE_MODES, PRESETS, DatasetPreset, load_csv, normalize
from .distance import METRICS
from .errors import RkmeansError
from .validity import DB_VARIANTS, db_index

log = logging.getLogger("rkmeans")

EXIT_USAGE, EXIT_IO = 2, 3


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg_float(text):
    v = float(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _int_list(text):
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return vals


def _data_args(p, multiple=False):
    g = p.add_argument_group("data")
    if multiple:
        g.add_argument("--data", action="append", required=True, type=Path,
                       help="data file; repeat for several datasets")
        g.add_argument("--preset", action="append", choices=[*PRESETS, "custom"],
                       help="column layout per --data (default: inferred from the file name)")
    else:
        g.add_argument("--data", required=True, type=Path)
        g.add_argument("--preset", choices=[*PRESETS, "custom"])
    g.add_argument("--delimiter", help="field separator; 'whitespace' splits on blanks")
    g.add_argument("--label-col", help="index of the class column (negative counts from the end) or 'none'")
    g.add_argument("--drop-cols", type=lambda s: [int(t) for t in s.split(",") if t.strip()],
                   help="comma-separated column indices to ignore")
    g.add_argument("--normalize", choices=NORMALIZE_MODES, default="none")


def _run_args(p, algo=True, metric=True):
    if algo:
        p.add_argument("--algo", choices=list(ALGORITHMS), default="kmeans")
    if metric:
        p.add_argument("--metric", choices=METRICS, default="euclidean")
    p.add_argument("--seed", type=int, default=0, help="seed (first seed for sweeps)")
    p.add_argument("--tol", type=_nonneg_float, default=1e-6)
    p.add_argument("--max-iter", type=_positive_int, default=300)
    p.add_argument("--static-weight", type=float, default=1.5)
    p.add_argument("--db-variant", choices=DB_VARIANTS, default="paper")
    p.add_argument("--out", type=Path, help="output path (stdout when omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rkmeans", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="run one clustering and print the result as JSON")
    _data_args(p)
    p.add_argument("--k", type=_positive_int, required=True)
    _run_args(p)

    b = sub.add_parser("bench", help="benchmark sweeps").add_subparsers(dest="sweep", required=True)
    sweeps = {
        "distance-sweep": "K-Means under each metric over a K range (DB index)",
        "algorithms": "all four algorithms on one or more datasets at a fixed K (DB index)",
        "time": "execution time per algorithm over a K list",
        "iterations": "iteration counts per algorithm over a K range",
    }
    for name, text in sweeps.items():
        p = b.add_parser(name, help=text, description=text)
        _data_args(p, multiple=name == "algorithms")
        _run_args(p, algo=False, metric=name != "distance-sweep")
        p.add_argument("--seeds", type=_positive_int, default=30, help="number of seeds for random init")
        p.add_argument("--format", default="json",
                       help="comma-separated subset of csv,json,plotdata")
        if name == "algorithms":
            p.add_argument("--k", type=_positive_int, default=5)
        elif name == "time":
            p.add_argument("--k-list", type=_int_list, default=list(bench.DEFAULT_K_LIST))
        else:
            p.add_argument("--k-min", type=_positive_int, default=2)
            p.add_argument("--k-max", type=_positive_int, default=10)
    return parser


def _preset(args, path: Path, name) -> DatasetPreset:
    if name is None:
        name = path.stem if path.stem in PRESETS else "custom"
    base = PRESETS.get(name, DatasetPreset("custom"))
    delimiter, label_col, drop = base.delimiter, base.label_col, base.drop_cols
    if args.delimiter is not None:
        delimiter = None if args.delimiter in ("whitespace", r"\s") else args.delimiter
    if args.label_col is not None:
        label_col = None if args.label_col.lower() == "none" else int(args.label_col)
    if args.drop_cols is not None:
        drop = tuple(args.drop_cols)
    return DatasetPreset(base.name, delimiter, label_col, drop)


def _load(args, path, preset_name):
    return normalize(load_csv(path, _preset(args, path, preset_name)), args.normalize)


def cmd_cluster(args) -> int:
    d = _load(args, args.data, args.preset)
    res = run_algorithm(d, args.k, args.algo, args.metric, args.seed, tol=args.tol,
                        max_iter=args.max_iter, static_weight=args.static_weight)
    db = db_index(d, res.assignments, res.centroids, args.db_variant) if args.k >= 2 else None
    out = {
        "schema": bench.SCHEMA,
        "dataset": d.name,
        "n": d.n,
        "p": d.p,
        "algorithm": args.algo,
        "metric": args.metric,
        "k": args.k,
        "seed": None if args.algo == "renovated" else args.seed,
        "normalize": args.normalize,
        "tol": args.tol,
        "max_iter": args.max_iter,
        "static_weight": args.static_weight if args.algo == "swkmeans" else None,
        "iterations": res.iterations,
        "converged": res.converged,
        "reseeds": res.reseeds,
        "db_index": db,
        "db_variant": args.db_variant,
        "inertia_history": res.inertia_history,
        "assignments": res.assignments.tolist(),
        "centroids": res.centroids.tolist(),
        "elapsed_ms": res.elapsed * 1000.0,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    text = json.dumps(out, indent=2) + "\n"
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _print_table(report: bench.BenchReport, stream):
    g = report.grids()["table"]
    cols = [str(c) for c in g["columns"]]
    stream.write(f"{report.kind}: {g['stat']}\n")
    stream.write(f"{g['row_key']:>10}" + "".join(f"{c:>12}" for c in cols) + "\n")
    for row, vals in zip(g["rows"], g["values"]):
        cells = "".join(f"{'-' if v is None else format(v, '.4g'):>12}" for v in vals)
        stream.write(f"{str(row):>10}{cells}\n")


def cmd_bench(args, parser) -> int:
    formats = [f.strip() for f in args.format.split(",") if f.strip()]
    bad = set(formats) - {"csv", "json", "plotdata"}
    if bad or not formats:
        parser.error(f"--format: unknown format(s) {sorted(bad)}")
    if args.out is None and (len(formats) > 1 or "plotdata" in formats):
        parser.error("--out is required for plotdata or several formats")
    seeds = list(range(args.seed, args.seed + args.seeds))
    common = dict(tol=args.tol, max_iter=args.max_iter, static_weight=args.static_weight,
                  db_variant=args.db_variant)

    if args.sweep == "algorithms":
        presets = args.preset or [None] * len(args.data)
        if len(presets) != len(args.data):
            parser.error("give --preset once per --data, or not at all")
        datasets = [_load(args, path, pre) for path, pre in zip(args.data, presets)]
        report = bench.bench_algorithms(datasets, args.k, seeds, metric=args.metric, **common)
    else:
        d = _load(args, args.data, args.preset)
        if args.sweep == "time":
            report = bench.bench_time(d, args.k_list, seeds, metric=args.metric, **common)
        else:
            if args.k_min > args.k_max:
                parser.error("--k-min must not exceed --k-max")
            ks = range(args.k_min, args.k_max + 1)
            if args.sweep == "distance-sweep":
                report = bench.bench_distance_sweep(d, ks, seeds, **common)
            else:
                report = bench.bench_iterations(d, ks, seeds, metric=args.metric, **common)

    if args.out is None:
        fmt = formats[0]
        sys.stdout.write(bench.to_json(report) if fmt == "json" else bench.to_csv(report))
    else:
        for fmt in formats:
            if len(formats) == 1:
                target = args.out
            elif fmt == "plotdata":
                target = args.out.with_suffix("").with_name(args.out.stem + "_plot")
            else:
                target = args.out.with_suffix("." + fmt)
            for path in bench.emit(report, fmt, target):
                log.info("wrote %s", path)
        if not report.partial:
            _print_table(report, sys.stdout)
    if report.partial:
        print(f"rkmeans: sweep aborted, partial report written: {report.error}", file=sys.stderr)
        return report.exit_code
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "cluster":
            return cmd_cluster(args)
        return cmd_bench(args, parser)
    except OSError as exc:
        print(f"rkmeans: {exc}", file=sys.stderr)
        return EXIT_IO
    except RkmeansError as exc:
        print(f"rkmeans: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
