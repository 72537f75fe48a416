from pathlib import Path

import pytest

from rkmeans import load_csv

DATA = Path(__file__).parent / "data"
ACCEPTANCE = []


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def uci():
    return {name: load_csv(DATA / f"{name}.data", name) for name in ("iris", "wine", "ecoli", "yeast")}


@pytest.fixture
def acceptance():
    """Record one acceptance-criterion outcome for the end-of-run summary."""
    def record(label, ok, detail=""):
        ACCEPTANCE.append((label, bool(ok), detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
