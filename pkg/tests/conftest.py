import pytest

from circstein import QuadratureGrid


@pytest.fixture(scope="session")
def grid():
    return QuadratureGrid(4096)


@pytest.fixture(scope="session")
def coarse_grid():
    return QuadratureGrid(512)
