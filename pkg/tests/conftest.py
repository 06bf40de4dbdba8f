"""Shared fixtures."""
import numpy as np
import pytest

from src.models.params import JacobiParams, NAParams
from src.models.profiles import RadialProfile, SO2FiniteFunction
from src.models.reports import RunConfig
from src.services.cache_service import projection_cache


@pytest.fixture(autouse=True)
def clear_projection_cache():
    """Every test starts from an empty projection cache."""
    projection_cache.clear()
    yield
    projection_cache.clear()


@pytest.fixture
def na_params():
    """Heisenberg type space with m = 2, k = 1 (Q = 2)."""
    return NAParams(2, 1)


@pytest.fixture
def disk_jacobi():
    return JacobiParams.disk()


@pytest.fixture
def radial_bump():
    return RadialProfile.bump(1.0)


@pytest.fixture
def disk_bump():
    """Centred radial bump of support 1."""
    return SO2FiniteFunction.bump(1.0, 0)


@pytest.fixture
def disk_bump_mode1():
    return SO2FiniteFunction.bump(1.0, 1)


@pytest.fixture
def run_config(tmp_path):
    """Factory for run configurations writing into a temporary directory."""

    def make(experiment: str, **kwargs) -> RunConfig:
        kwargs.setdefault("out", str(tmp_path / "reports"))
        return RunConfig(experiment=experiment, **kwargs)

    return make


@pytest.fixture
def gaussian():
    """exp(-rho^2), negligible beyond the support 6 and with fast spectral decay."""
    return RadialProfile(support=6.0, func=lambda x: np.exp(-np.asarray(x) ** 2), key=("gaussian",))
