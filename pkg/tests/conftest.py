import pytest

from oddjac.ffpoly import FieldSpec, Place, parse_poly


@pytest.fixture(scope="session")
def F3():
    return FieldSpec(3)


@pytest.fixture(scope="session")
def F5():
    return FieldSpec(5)


@pytest.fixture(scope="session")
def F9():
    return FieldSpec.from_q(9, "T^2+1")


@pytest.fixture(scope="session")
def F4():
    return FieldSpec.from_q(4, "T^2+T+1")


@pytest.fixture
def place():
    def make(F, text):
        return Place(parse_poly(F, text))

    return make
