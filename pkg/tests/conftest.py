from pathlib import Path

import numpy as np
import pytest

from conceptbell.published import bundled

DATA = Path(str(bundled("")))


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def conjunction_csv():
    return DATA / "conjunction.csv"


@pytest.fixture
def chsh_json():
    return DATA / "chsh.json"


@pytest.fixture
def born_csv():
    return DATA / "born.csv"


@pytest.fixture
def rng():
    return np.random.default_rng(20171021)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict_line():
    def record(criterion: str, ok: bool, detail: str) -> None:
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
