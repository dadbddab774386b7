import numpy as np
import pytest

from qftforge.state import StateVector


def random_state(n, rng):
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return StateVector(n, amps / np.linalg.norm(amps))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
