import csv
import json

import numpy as np
import pytest

from rkmeans import ParameterError, make_blobs, normalize
from rkmeans.bench import (BenchReport, ReportError, aggregate, bench_algorithms, bench_distance_sweep,
                           bench_iterations, bench_time, emit, load_report, read_csv_records, to_csv)


@pytest.fixture(scope="module")
def small():
    return make_blobs(4, 15, 3, separation=4, spread=1.0, seed=3)


def _strip(d):
    d = json.loads(json.dumps(d))
    d.pop("environment")
    for r in d["records"]:
        r.pop("elapsed_ms")
    for a in d["aggregates"]:
        for key in [k for k in a if k.startswith("ms_")]:
            a.pop(key)
    d["grids"] = {k: v for k, v in d["grids"].items() if not v["stat"].startswith("ms_")}
    return d


def test_minimal_distance_sweep(small):
    rep = bench_distance_sweep(small, range(2, 3), seeds=1)
    assert len(rep.records) == 3
    assert {r.metric for r in rep.records} == {"manhattan", "euclidean", "chebyshev"}


def test_distance_sweep_shape(small):
    rep = bench_distance_sweep(small, range(2, 6), seeds=4)
    assert len(rep.records) == 3 * 4 * 4
    g = rep.grids()["table"]
    assert g["rows"] == [2, 3, 4, 5] and g["columns"] == ["manhattan", "euclidean", "chebyshev"]
    for row, vals in zip(g["rows"], g["values"]):
        for metric, v in zip(g["columns"], vals):
            dbs = [r.db_index for r in rep.records if r.k == row and r.metric == metric]
            assert v == pytest.approx(sum(dbs) / len(dbs), rel=1e-12)


def test_algorithms_cardinality(small):
    other = make_blobs(3, 10, 2, 5, 1.0, seed=9)
    rep = bench_algorithms([small, other], k=3, seeds=5)
    for d in (small, other):
        rs = [r for r in rep.records if r.dataset == d.name]
        assert len(rs) == 3 * 5 + 1
        assert sum(r.algorithm == "renovated" for r in rs) == 1
    g = rep.grids()["table"]
    assert np.array(g["values"]).shape == (2, 4)
    assert g["columns"] == ["kmeans", "swkmeans", "dwkmeans", "renovated"]


def test_single_dataset_single_seed(small):
    assert len(bench_algorithms([small], 3, 1).records) == 4


def test_time_grid(small):
    rep = bench_time(small, [3, 6, 9, 12, 15], seeds=2)
    g = rep.grids()["table"]
    assert np.array(g["values"]).shape == (5, 4)
    assert all(r.elapsed_ms > 0 for r in rep.records)
    for a in rep.aggregates:
        ms = sorted(r.elapsed_ms for r in rep.records
                    if (r.algorithm, r.k) == (a["algorithm"], a["k"]))
        assert a["ms_median"] == pytest.approx((ms[0] + ms[1]) / 2)
    rel = rep.grids()["relative"]
    assert all(row[0] == 1.0 for row in rel["values"])


def test_time_one_cell(small):
    rep = bench_time(small, [2], seeds=1, algorithms=("kmeans",))
    assert len(rep.records) == 1 and rep.records[0].elapsed_ms > 0


def test_iterations(small):
    rep = bench_iterations(small, range(2, 11), seeds=3, max_iter=50)
    assert np.array(rep.grids()["table"]["values"]).shape == (9, 4)
    assert all(1 <= r.iterations <= 50 for r in rep.records)
    for k in range(2, 11):
        its = {r.iterations for r in rep.records if r.algorithm == "renovated" and r.k == k}
        assert len(its) == 1


def test_k_range_checked(small):
    with pytest.raises(ParameterError):
        bench_distance_sweep(small, range(1, 3), seeds=1)
    with pytest.raises(ParameterError):
        bench_time(small, [small.n + 1], seeds=1)


def test_partial_report_on_degenerate_data():
    # renovated init rejects a dataset of identical points mid-sweep
    flat = make_blobs(1, 6, 2, spread=0.0, seed=0)
    rep = bench_algorithms([flat], k=2, seeds=2)
    assert rep.partial and "DegenerateError" in rep.error and rep.exit_code == 5
    assert len(rep.records) < 7


def test_json_round_trip(tmp_path, small):
    rep = bench_iterations(small, range(2, 4), seeds=2)
    (path,) = emit(rep, "json", tmp_path / "r.json")
    back = load_report(path)
    assert back.records == rep.records
    assert back.params == json.loads(json.dumps(rep.params))
    assert json.loads(path.read_text())["schema"] == 1


def test_tampered_aggregates_rejected(tmp_path, small):
    rep = bench_distance_sweep(small, range(2, 3), seeds=2)
    (path,) = emit(rep, "json", tmp_path / "r.json")
    data = json.loads(path.read_text())
    data["aggregates"][0]["db_mean"] += 1
    path.write_text(json.dumps(data))
    with pytest.raises(ReportError):
        load_report(path)
    data["schema"] = 2
    path.write_text(json.dumps(data))
    with pytest.raises(ReportError, match="schema"):
        load_report(path)


def test_csv_layout(tmp_path, small):
    rep = bench_distance_sweep(small, range(2, 5), seeds=2)
    (path,) = emit(rep, "csv", tmp_path / "r.csv")
    lines = path.read_text().splitlines()
    agg = rep.aggregates
    grid_lines = 2 + 3  # marker, header, one line per K
    assert len(lines) == 1 + len(rep.records) + (2 + len(agg)) + grid_lines
    assert lines[1 + len(rep.records)] == "#aggregates"


def test_csv_and_json_hold_the_same_records(tmp_path, small):
    rep = bench_algorithms([small], 4, 3)
    (j,) = emit(rep, "json", tmp_path / "r.json")
    (c,) = emit(rep, "csv", tmp_path / "r.csv")
    assert read_csv_records(c) == load_report(j).records == rep.records


def test_plotdata_distance_sweep(tmp_path, small):
    rep = bench_distance_sweep(small, range(2, 5), seeds=2)
    files = emit(rep, "plotdata", tmp_path / "plot")
    assert len(files) == 3
    with open(files[1]) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["k", "db_mean"] and [int(r[0]) for r in rows[1:]] == [2, 3, 4]


def test_reports_reproducible(small):
    a = bench_algorithms([small], 3, 3).to_dict()
    b = bench_algorithms([small], 3, 3).to_dict()
    assert _strip(a) == _strip(b)


def test_records_sorted_regardless_of_input_order(small):
    rep = bench_algorithms([small], 3, 2)
    shuffled = BenchReport(rep.kind, list(reversed(rep.records)), rep.params)
    assert shuffled.records == rep.records
    assert aggregate(reversed(rep.records)) == rep.aggregates


def test_normalize_recorded(small):
    rep = bench_algorithms([normalize(small, "zscore")], 3, 1)
    assert {r.normalize for r in rep.records} == {"zscore"}


def test_unknown_format(tmp_path, small):
    rep = bench_algorithms([small], 3, 1)
    with pytest.raises(ParameterError):
        emit(rep, "xml", tmp_path / "x")
