import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from torus_games.lattice import preset_kernel

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def nn3():
    return preset_kernel("nn", 3)


@pytest.fixture(scope="session")
def moore3():
    return preset_kernel("moore-1", 3)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260823)
