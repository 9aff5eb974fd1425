import pytest

from olgdyn.config import preset


@pytest.fixture(scope="session")
def fig1():
    return preset("figure1")


@pytest.fixture(scope="session")
def fig2():
    return preset("figure2")


@pytest.fixture(scope="session")
def fig3():
    return preset("figure3")
