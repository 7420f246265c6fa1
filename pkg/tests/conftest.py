import pytest

from core import quatalg
from core.oracle import double_coset_table


@pytest.fixture(scope='session')
def coset_table():
    return double_coset_table().entries


@pytest.fixture(scope='module')
def order_11():
    return quatalg.maximal_order(quatalg.make_algebra(11))
