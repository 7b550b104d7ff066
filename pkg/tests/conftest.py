import pytest

from omlkit import corpus
from omlkit.lattice import build_oml

SMALL = ["12.", "123.", "1234.", "123,345.", "123,456.", "123,45.", "12,34."]


@pytest.fixture(scope="session")
def peterson():
    return corpus.lattice("peterson")


@pytest.fixture(scope="session")
def boolean8():
    return build_oml("123.")


@pytest.fixture(scope="session")
def small_lattices():
    return [build_oml(t) for t in SMALL]
