import pytest

from sl1d.gf import FieldTower


@pytest.fixture(scope="session")
def tower32():
    return FieldTower(3, 1, 2)


@pytest.fixture(scope="session")
def tower53():
    return FieldTower(5, 1, 3)


@pytest.fixture(scope="session")
def tower52():
    return FieldTower(5, 1, 2)


@pytest.fixture(scope="session")
def tower73():
    return FieldTower(7, 1, 3)
