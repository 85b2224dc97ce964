import numpy as np
import pytest

from qchernoff.states import default_qubit_pair

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def qubit_pair():
    return default_qubit_pair()


@pytest.fixture
def rng():
    return np.random.default_rng(20260418)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
