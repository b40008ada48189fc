import pytest

from horocp import GroupSpec, LengthFunction, hexagonal_generators


@pytest.fixture(scope="session")
def z1():
    return GroupSpec.free_abelian(1)


@pytest.fixture(scope="session")
def z2():
    return GroupSpec.free_abelian(2)


@pytest.fixture(scope="session")
def z3():
    return GroupSpec.free_abelian(3)


@pytest.fixture(scope="session")
def h3():
    return GroupSpec.heisenberg3()


@pytest.fixture(scope="session")
def len_z1(z1):
    return LengthFunction.word(z1)


@pytest.fixture(scope="session")
def len_z2(z2):
    return LengthFunction.word(z2)


@pytest.fixture(scope="session")
def len_z2_hex(z2):
    return LengthFunction.word(z2, hexagonal_generators())


@pytest.fixture(scope="session")
def len_h3(h3):
    return LengthFunction.word(h3)
