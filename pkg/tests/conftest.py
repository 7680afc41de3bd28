import numpy as np
import pytest

from gqd.discord import OracleConfig
from gqd.states import random_state


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture
def fast_oracle():
    """Small-budget oracle settings for routine tests; the smart start does the work."""
    return OracleConfig(restarts=6, max_iters=4000, seed=0)


def random_hermitian(n, rng):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2


def sample_states(d1, d2, count, seed0=0):
    return [random_state(d1, d2, seed=[seed0, k]) for k in range(count)]
