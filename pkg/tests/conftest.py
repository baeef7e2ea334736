import pathlib

import pytest

from toricstab import builtin_fan

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def h1():
    return builtin_fan("hirzebruch(1)")


@pytest.fixture(scope="session")
def cp1():
    return builtin_fan("cp(1)")


@pytest.fixture(scope="session")
def cp2():
    return builtin_fan("cp(2)")
