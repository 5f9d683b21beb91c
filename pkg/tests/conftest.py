import numpy as np
import pytest

from hvx.oracles import ORACLE_VERSION

from .helpers import ORACLE_CONSTANTS_VERSION, SAMPLE_FRONT_3D, SAMPLE_REF_3D, STAIRCASE_2D, STAIRCASE_REF_2D


def pytest_configure(config):
    if ORACLE_VERSION != ORACLE_CONSTANTS_VERSION:
        raise pytest.UsageError(f"regression constants were derived with oracle version {ORACLE_CONSTANTS_VERSION}, found {ORACLE_VERSION}")


@pytest.fixture
def front3d():
    return np.array(SAMPLE_FRONT_3D, dtype=float)


@pytest.fixture
def ref3d():
    return SAMPLE_REF_3D


@pytest.fixture
def stairs2d():
    return np.array(STAIRCASE_2D)


@pytest.fixture
def ref2d():
    return STAIRCASE_REF_2D


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
