import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from loewner.verify import random_drive

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CORPUS_SEED = 20240611
CORPUS_SIZE = 100

# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def closed_form(z, t, a=1.0, center=0.0):
    """sqrt((z - center)**2 - 2 a t) + center with the upper-half-plane branch."""
    u = np.asarray(z, dtype=np.complex128) - center
    w = np.sqrt(u * u - 2 * a * t)
    w = np.where(w.imag < 0, -w, w)
    # on the real axis keep the side of the input
    w = np.where((w.imag == 0) & (np.sign(w.real) != np.sign(u.real)), -w, w)
    return w + center


def make_corpus(size=CORPUS_SIZE, seed=CORPUS_SEED):
    rng = np.random.default_rng(seed)
    return [random_drive(rng) for _ in range(size)]


@pytest.fixture(scope="session")
def corpus():
    return make_corpus()


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile the numba kernels once so timing-sensitive tests measure the numerics
    from loewner import flow_composed, DrivingFunction, compute_trace

    drive = DrivingFunction.constant(0.0, 0.5)
    flow_composed(drive, 0.0, 0.5, 4)(np.array([1j]))
    compute_trace(drive, 4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
