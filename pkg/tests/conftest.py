import pytest

from lp_lab import fixtures
from lp_lab.model import pair_at


@pytest.fixture
def fa():
    return fixtures.fix_a()


@pytest.fixture
def fb():
    return fixtures.fix_b()


@pytest.fixture
def fc():
    return fixtures.fix_c()


@pytest.fixture
def fd():
    return fixtures.fix_d()


@pytest.fixture
def fe():
    return fixtures.fix_e()


@pytest.fixture
def at():
    return pair_at
