import pytest

from nfalgebra import fixtures


@pytest.fixture(scope="session")
def n1():
    return fixtures.n1()


@pytest.fixture(scope="session")
def n2():
    return fixtures.n2()


@pytest.fixture(scope="session")
def env(n1, n2):
    return {"N1": n1, "N2": n2}
