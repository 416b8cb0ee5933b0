import pytest
from multiplicative_ising.lattice.semigroup import validate_generators


@pytest.fixture
def doubling():
    return validate_generators([2], 1)


@pytest.fixture
def two_three():
    return validate_generators([2, 3], 1)


@pytest.fixture
def fig1():
    return validate_generators([2, 3, 5, 7, 11], 1)


@pytest.fixture
def fig2():
    return validate_generators([(2, 3), (3, 5), (5, 7), (7, 11), (11, 2)], 2)


@pytest.fixture
def diag23():
    return validate_generators([(2, 3)], 2)


@pytest.fixture
def product6():
    return validate_generators([(6, 1)], 2)
