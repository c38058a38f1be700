import time

import pytest

from fircluster.experiment import run_experiment
from fircluster.synthgen import GenConfig

ACCEPTANCE = []

# one easy and one hard noisy configuration at desk scale
EASY_ROW = GenConfig(1000, 6, 3, sigma=1.0, noise=6)
HARD_ROW = GenConfig(1000, 10, 10, sigma=2.0, noise=10)
DESK_DATASETS = 10
DESK_RUNS = 50
MASTER_SEED = 0


def _desk_run(cfg):
    start = time.perf_counter()
    outcome = run_experiment([cfg], DESK_RUNS, DESK_DATASETS, MASTER_SEED)[0]
    return outcome, time.perf_counter() - start


@pytest.fixture(scope="session")
def easy_row():
    return _desk_run(EASY_ROW)


@pytest.fixture(scope="session")
def hard_row():
    return _desk_run(HARD_ROW)


@pytest.fixture
def acceptance():
    """Call with (criterion, passed, detail); lines are echoed in the terminal summary."""
    def record(criterion, passed, detail=""):
        ACCEPTANCE.append((criterion, bool(passed), detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")
