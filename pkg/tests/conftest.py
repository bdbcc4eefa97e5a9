import pathlib

import pytest

from colexwidth.cli import parse_dfa_text

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def load_fixture(name):
    return parse_dfa_text((FIXTURES / name).read_text())


@pytest.fixture(scope="session")
def a1():
    return load_fixture("a1.dfa")


@pytest.fixture(scope="session")
def a2():
    return load_fixture("a2.dfa")


@pytest.fixture(scope="session")
def a3():
    return load_fixture("a3.dfa")


@pytest.fixture(scope="session")
def acstar():
    return load_fixture("acstar.dfa")


@pytest.fixture(scope="session")
def threeloops():
    return load_fixture("threeloops.dfa")


@pytest.fixture(scope="session")
def fixture_path():
    def get(name):
        return str(FIXTURES / name)

    return get
