import numpy as np
import pytest

from tfhomology import (EquationParams, integrate_direct, reconstruct_majorana,
                        shoot_initial_slope, solve_majorana)

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def critical_slope():
    # bisection down to adjacent floats
    return shoot_initial_slope(1e-15)


@pytest.fixture(scope="session")
def tf_table(critical_slope):
    return integrate_direct(EquationParams(1.5), critical_slope, 60.0, 1e-13,
                            atol=1e-300)


@pytest.fixture(scope="session")
def majorana():
    return solve_majorana(2001)


@pytest.fixture(scope="session")
def parametric(majorana):
    return reconstruct_majorana(majorana)


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
