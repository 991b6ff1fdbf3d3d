import pytest

from uncertkit.grid import GridSpec


@pytest.fixture(scope="session")
def grid1() -> GridSpec:
    return GridSpec(1, 20.0, 4096)


@pytest.fixture(scope="session")
def grid2() -> GridSpec:
    return GridSpec(2, 12.0, 512)


@pytest.fixture(scope="session")
def grid3() -> GridSpec:
    return GridSpec(3, 8.0, 128)
