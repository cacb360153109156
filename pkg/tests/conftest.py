import pytest

from preproj.calculus import Calculus
from preproj.hochschild import get_hochschild

# four periods: window-1 products reach chain index 23
NTERMS = 24


@pytest.fixture(scope="session")
def hh_t1():
    return get_hochschild("T", 1, NTERMS)


@pytest.fixture(scope="session")
def hh_t2():
    return get_hochschild("T", 2, NTERMS)


@pytest.fixture(scope="session")
def hh_t3():
    return get_hochschild("T", 3, NTERMS)


@pytest.fixture(scope="session")
def cal_t1(hh_t1):
    return Calculus(hh_t1)


@pytest.fixture(scope="session")
def cal_t2(hh_t2):
    return Calculus(hh_t2)


@pytest.fixture(scope="session")
def cal_t3(hh_t3):
    return Calculus(hh_t3)
