import pytest

from swr_airsea import GridSpec, PhysicalParams, TimeSpec, compute_equilibrium


@pytest.fixture(scope="session")
def params5():
    """Reference configuration of the experiments (geostrophic forcing)."""
    return PhysicalParams.geostrophic(
        f=1e-4, nu_a=1.0, nu_o=3e-3, rho_a=1.0, rho_o=1000.0,
        c_d=1.2e-3, u_inf_a=10.0, u_inf_o=0.1)


@pytest.fixture(scope="session")
def grid5():
    return GridSpec(h_a=20.0, h_o=2.0, n_a=100, n_o=1000)


@pytest.fixture(scope="session")
def grid_small():
    """Reduced grid for fast solver tests."""
    return GridSpec(h_a=20.0, h_o=2.0, n_a=20, n_o=50)


@pytest.fixture(scope="session")
def time_small():
    return TimeSpec(dt=60.0, n_t=100)


@pytest.fixture(scope="session")
def equilibrium5(params5, grid5):
    return compute_equilibrium(params5, grid5)


@pytest.fixture(scope="session")
def equilibrium_small(params5, grid_small):
    return compute_equilibrium(params5, grid_small)
