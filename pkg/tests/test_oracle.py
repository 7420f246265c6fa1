from fractions import Fraction

import pytest

from core import oracle, quatalg
from core.classno import h123, h_eichler_pizer, h_maximal
from core.exceptions import EnumerationBoundError, InvalidInputError
from core.numth import primes_between
from core.oracle import (
    DoubleCosetTable,
    RightIdealClassEnumerator,
    are_equivalent,
    count_eichler_lattices,
    double_coset_table,
    eichler_lattice_types,
    eichler_mass,
    enumerate_right_ideal_classes,
    h123_bruteforce,
    h_eichler_bruteforce,
    unit_group_order,
    unit_orders_census,
)


def test_double_coset_table():
    table = double_coset_table()
    assert table.entries == ((6, 3, 2), (3, 2, 1), (2, 1, 2))
    assert table[1, 1] == 6
    assert table[2, 3] == 1
    assert table[3, 3] == 2


def test_double_coset_table_is_symmetric():
    table = double_coset_table()
    assert isinstance(table, DoubleCosetTable)
    for j1 in range(1, 4):
        for j2 in range(1, 4):
            assert table[j1, j2] == table[j2, j1]


def test_eichler_mass():
    assert eichler_mass(11) == Fraction(5, 6)
    assert eichler_mass(11, 2) == Fraction(5, 2)
    assert eichler_mass(13, 6) == Fraction(12, 1)


def test_unit_group_orders_at_ramified_small_primes():
    assert unit_group_order(quatalg.maximal_order(quatalg.make_algebra(2))) == 24
    assert unit_group_order(quatalg.maximal_order(quatalg.make_algebra(3))) == 12


def test_unit_group_order_of_p_eleven(order_11):
    assert unit_group_order(order_11) == 4


def test_equivalence_of_principal_ideals(order_11):
    A = order_11.algebra
    principal = quatalg.lattice_left_mul(A.one + A.i + A.j, order_11.lattice)
    assert are_equivalent(order_11.lattice, order_11.lattice)
    assert are_equivalent(order_11.lattice, principal)


@pytest.mark.parametrize('p, unit_orders', [
    (11, [4, 6]),
    (13, [2]),
    (23, [2, 4, 6]),
])
def test_right_ideal_classes(p, unit_orders):
    order = quatalg.maximal_order(quatalg.make_algebra(p))
    classes = enumerate_right_ideal_classes(order)
    assert classes.class_number == h_maximal(p)
    assert classes.mass == eichler_mass(p)
    assert sorted(classes.unit_orders) == unit_orders
    assert classes.norms[0] == 1


def test_representatives_are_pairwise_inequivalent():
    order = quatalg.maximal_order(quatalg.make_algebra(23))
    classes = enumerate_right_ideal_classes(order)
    reps = classes.representatives
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            assert not are_equivalent(reps[a], reps[b], classes.norms[a], classes.norms[b])
    for rep in reps:
        assert quatalg.right_order(rep).lattice == order.lattice


def test_enumeration_respects_the_bound(order_11):
    with pytest.raises(EnumerationBoundError):
        RightIdealClassEnumerator(order_11, bound=10).run()


def test_unit_orders_census():
    assert unit_orders_census(11) == [4, 6]


@pytest.mark.parametrize('p', [7, 11, 13, 17, 19, 23])
def test_h123_bruteforce(p):
    assert h123_bruteforce(p) == h123(p)


def test_h123_bruteforce_rejects_small_primes():
    with pytest.raises(InvalidInputError):
        h123_bruteforce(3)


@pytest.mark.parametrize('p, ell', [(7, 2), (11, 2), (11, 3), (13, 3)])
def test_h_eichler_bruteforce(p, ell):
    assert h_eichler_bruteforce(p, ell) == h_eichler_pizer(p, ell)


@pytest.mark.slow
def test_class_numbers_up_to_fifty():
    for p in primes_between(5, 50):
        order = quatalg.maximal_order(quatalg.make_algebra(p))
        assert enumerate_right_ideal_classes(order).class_number == h_maximal(p)
        assert h123_bruteforce(p) == h123(p)


@pytest.mark.slow
def test_eichler_class_numbers_up_to_fifty():
    for p in primes_between(5, 50):
        for ell in (2, 3):
            assert h_eichler_bruteforce(p, ell) == h_eichler_pizer(p, ell)


def test_count_eichler_lattices():
    assert count_eichler_lattices(1, 2) == 3
    assert count_eichler_lattices(1, 1) == 2
    for m in range(1, 11):
        assert count_eichler_lattices(0, m) == 1
    for n in range(21):
        assert count_eichler_lattices(n, 1) == n + 1


def test_count_eichler_lattices_matches_enumeration():
    for n in range(7):
        for m in range(1, 7):
            types = list(eichler_lattice_types(n, m))
            assert len(types) == len(set(types)) == count_eichler_lattices(n, m)
            for s, t in types:
                assert sum(s) == m and all(x >= 1 for x in s)
                assert all(a > b for a, b in zip(t, t[1:])) and t[0] <= n and t[-1] >= 0


def test_count_eichler_lattices_rejects_bad_arguments():
    with pytest.raises(InvalidInputError):
        count_eichler_lattices(-1, 2)
    with pytest.raises(InvalidInputError):
        count_eichler_lattices(2, 0)


def test_oracle_module_exposes_neighbor_primes():
    assert oracle.NEIGHBOR_PRIMES[0] == 2
