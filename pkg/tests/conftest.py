import numpy as np
import pytest

from dh_moduli.surface import PeriodMatrix

# filled in by test_acceptance, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def tau_i():
    return PeriodMatrix([[1j]])


@pytest.fixture
def genus2():
    return PeriodMatrix([[1j, 0], [0, 2j]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
