import numpy as np
import pytest

from dmosc import ModelParams, initial_state, plan


@pytest.fixture(scope="session")
def ref_params():
    return ModelParams(lambda1=0.3, lambda2=0.3, omega=0.2, alpha=3.0)


@pytest.fixture(scope="session")
def ref_state(ref_params):
    return initial_state(ref_params)


@pytest.fixture(scope="session")
def ref_plan(ref_params):
    return plan(ref_params)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def random_state(rng, mp, tau=0.0):
    """Normalized random state with the sector layout of ``mp``."""
    s = initial_state(mp)
    amps = rng.normal(size=s.amplitudes.shape) + 1j * rng.normal(size=s.amplitudes.shape)
    if mp.n_min == -2:
        amps[0, 2] = 0.0
    amps /= np.sqrt(np.sum(np.abs(amps) ** 2))
    return s.with_amplitudes(amps, tau)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
