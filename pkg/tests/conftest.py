import numpy as np
import pytest
from prefect.testing.utilities import prefect_test_harness

from two_photon_qhe.physics.params import ParameterSet, load_parameter_set


@pytest.fixture(scope='session')
def fig3() -> ParameterSet:
    """Weak pump with n_2 = n_c = 100."""
    return load_parameter_set('fig3')


@pytest.fixture(scope='session')
def fig7() -> ParameterSet:
    return load_parameter_set('fig7')


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture(scope='session')
def prefect_harness():
    with prefect_test_harness():
        yield
