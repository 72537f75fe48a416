import json
import subprocess
import sys

import pytest

from rkmeans.cli import main


def _cluster(capsys, *argv):
    code = main(["cluster", *argv])
    return code, capsys.readouterr()


def test_cluster_iris(capsys, data_dir):
    code, out = _cluster(capsys, "--data", str(data_dir / "iris.data"), "--preset", "iris",
                         "--algo", "renovated", "--k", "3", "--metric", "euclidean")
    assert code == 0
    result = json.loads(out.out)
    assert len(result["assignments"]) == 150 and result["n"] == 150
    assert result["schema"] == 1 and result["db_index"] > 0
    assert len(result["centroids"]) == 3


def test_renovated_output_ignores_seed(tmp_path, data_dir):
    texts = []
    for seed in ("1", "2"):
        out = tmp_path / f"s{seed}.json"
        assert main(["cluster", "--data", str(data_dir / "iris.data"), "--algo", "renovated",
                     "--k", "3", "--seed", seed, "--out", str(out)]) == 0
        d = json.loads(out.read_text())
        d.pop("elapsed_ms")
        d.pop("timestamp")
        texts.append(json.dumps(d))
    assert texts[0] == texts[1]


def test_exit_codes(capsys, tmp_path, data_dir):
    iris = str(data_dir / "iris.data")
    with pytest.raises(SystemExit) as exc:
        main(["cluster", "--data", iris, "--k", "0"])
    assert exc.value.code == 2
    assert _cluster(capsys, "--data", str(tmp_path / "missing.data"), "--k", "2")[0] == 3
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3\n")
    assert _cluster(capsys, "--data", str(bad), "--k", "1")[0] == 3
    code, out = _cluster(capsys, "--data", iris, "--k", "151")
    assert code == 4 and out.err.count("\n") == 1
    flat = tmp_path / "flat.csv"
    flat.write_text("1,1\n1,1\n1,1\n")
    assert _cluster(capsys, "--data", str(flat), "--k", "2", "--algo", "renovated")[0] == 5


def test_custom_layout_flags(capsys, data_dir):
    code, out = _cluster(capsys, "--data", str(data_dir / "ecoli.data"), "--preset", "custom",
                         "--delimiter", "whitespace", "--label-col", "-1", "--drop-cols", "0", "--k", "4")
    assert code == 0 and json.loads(out.out)["p"] == 7


def test_bench_files(tmp_path, data_dir):
    out = tmp_path / "sweep.json"
    code = main(["bench", "distance-sweep", "--data", str(data_dir / "iris.data"), "--k-min", "2",
                 "--k-max", "3", "--seeds", "2", "--format", "json,csv,plotdata", "--out", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["kind"] == "distance-sweep"
    assert (tmp_path / "sweep.csv").exists()
    assert len(list((tmp_path / "sweep_plot").glob("*.csv"))) == 3


def test_bench_algorithms_multiple_data(capsys, data_dir):
    code = main(["bench", "algorithms", "--data", str(data_dir / "iris.data"), "--data",
                 str(data_dir / "wine.data"), "--k", "3", "--seeds", "2", "--format", "csv"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("dataset,algorithm") and len(lines) > 14


def test_bench_usage_errors(data_dir):
    with pytest.raises(SystemExit) as exc:
        main(["bench", "time", "--data", str(data_dir / "iris.data"), "--format", "plotdata"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bench", "iterations", "--data", str(data_dir / "iris.data"), "--k-min", "5", "--k-max", "3"])
    assert exc.value.code == 2


def test_module_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "rkmeans", "cluster", "--data", str(data_dir / "wine.data"),
                           "--k", "3", "--algo", "dwkmeans"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)["assignments"]) == 178
