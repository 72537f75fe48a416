"""Rebuild UCI-format iris/wine/ecoli/yeast ``*.data`` files offline.

The UCI host is unreachable from the build sandbox, so the files under
``tests/data`` are reconstructed from copies shipped in PyPI packages:

* iris, wine: ``sklearn.datasets`` CSVs (iris rows 35 and 38 are reverted
  to the values found in the UCI file, which differ from Fisher's table)
* ecoli, yeast: the KEEL copies in ``keel_ds``. KEEL keeps the UCI feature
  values and row order but drops the sequence-name column and splits the
  classes into one-vs-rest files; class names are recovered by matching
  feature rows across those files. Sequence names are placeholders.

Usage: python tools/build_uci_fixtures.py [outdir]
"""

import collections
import csv
import os
import sys
from importlib import resources

IRIS_NAMES = ["Iris-setosa", "Iris-versicolor", "Iris-virginica"]
IRIS_UCI_ERRATA = {34: "4.9,3.1,1.5,0.1", 37: "4.9,3.1,1.5,0.1"}


def _sklearn_csv(name):
    path = resources.files("sklearn.datasets") / "data" / name
    with path.open() as fh:
        rows = list(csv.reader(fh))
    return rows[1:]


def _keel_rows(name):
    path = resources.files("keel_ds") / "data" / "imbalanced" / "raw" / f"{name}.dat"
    rows = []
    for line in path.read_text().splitlines():
        if not line.strip() or line.startswith("@"):
            continue
        parts = [t.strip() for t in line.split(",")]
        rows.append((tuple(f"{float(v):.2f}" for v in parts[:-1]), parts[-1]))
    return rows


def _rows_of(name, cls):
    return collections.Counter(f for f, c in _keel_rows(name) if c == cls)


def _assign(features, labels, name, cls, target, drop=None):
    # drop: feature column absent from this KEEL file
    pool = _rows_of(name, cls)
    for i, f in enumerate(features):
        if labels[i] is not None:
            continue
        key = f if drop is None else f[:drop] + f[drop + 1:]
        if pool[key] > 0:
            pool[key] -= 1
            labels[i] = target


def build_iris(out):
    lines = []
    for i, row in enumerate(_sklearn_csv("iris.csv")):
        values = IRIS_UCI_ERRATA.get(i, ",".join(row[:4]))
        lines.append(f"{values},{IRIS_NAMES[int(row[4])]}")
    _write(out, "iris.data", lines)


def build_wine(out):
    lines = [",".join([str(int(row[-1]) + 1)] + row[:-1]) for row in _sklearn_csv("wine_data.csv")]
    _write(out, "wine.data", lines)


def build_ecoli(out):
    base = _keel_rows("ecoli1")
    features = [f for f, _ in base]
    labels = [None] * len(features)
    for name, cls in [("ecoli1", "im"), ("ecoli2", "pp"), ("ecoli3", "imU"), ("ecoli4", "om")]:
        _assign(features, labels, name, "positive", cls)
    _assign(features, labels, "ecoli-0_vs_1", "positive", "cp")
    # the UCI file is sorted by class: imS, imL then (after om) omL
    rest = [i for i, lab in enumerate(labels) if lab is None]
    assert rest == [220, 221, 222, 223, 279, 280, 281, 282, 283], rest
    for i, cls in zip(rest, ["imS"] * 2 + ["imL"] * 2 + ["omL"] * 5):
        labels[i] = cls
    names = [f"ECOLI{i + 1:04d}" for i in range(len(features))]
    _write(out, "ecoli.data", _whitespace(names, features, labels))
    return collections.Counter(labels)


def build_yeast(out):
    base = _keel_rows("yeast1")
    features = [f for f, _ in base]
    labels = [None] * len(features)
    for name, cls in [("yeast1", "NUC"), ("yeast3", "ME3"), ("yeast4", "ME2"),
                      ("yeast5", "ME1"), ("yeast6", "EXC")]:
        _assign(features, labels, name, "positive", cls)
    _assign(features, labels, "yeast-2_vs_4", "negative", "CYT")
    _assign(features, labels, "yeast-1_vs_7", "positive", "VAC", drop=5)
    _assign(features, labels, "yeast-2_vs_8", "positive", "POX")
    # positives of 0-2-5-6_vs_3-7-8-9 are ME1+VAC+POX+ERL
    _assign(features, labels, "yeast-0-2-5-6_vs_3-7-8-9", "positive", "ERL")
    labels = [lab or "MIT" for lab in labels]
    names = [f"YEAST{i + 1:04d}" for i in range(len(features))]
    _write(out, "yeast.data", _whitespace(names, features, labels))
    return collections.Counter(labels)


def _whitespace(names, features, labels):
    return ["  ".join([n, *[f"{float(v):.2f}" for v in f], lab])
            for n, f, lab in zip(names, features, labels)]


def _write(out, name, lines):
    with open(os.path.join(out, name), "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "tests", "data")
    os.makedirs(out, exist_ok=True)
    build_iris(out)
    build_wine(out)
    print("ecoli", build_ecoli(out))
    print("yeast", build_yeast(out))
