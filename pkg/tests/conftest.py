import pytest

from nilcontact import catalog


@pytest.fixture(scope="session")
def entries():
    return {name: catalog.get(name) for name in catalog.names()}


@pytest.fixture(scope="session")
def ex5d(entries):
    return entries["paper-ex5d"]


@pytest.fixture(scope="session")
def ex7d(entries):
    return entries["paper-ex7d"]


@pytest.fixture(scope="session")
def h3(entries):
    return entries["heisenberg3"]


@pytest.fixture(scope="session")
def h5(entries):
    return entries["heisenberg5"]
