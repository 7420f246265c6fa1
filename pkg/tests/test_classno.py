from fractions import Fraction

import pytest

from core import classno
from core.classno import (
    DEFERRED_NOTE,
    ClassNumberBundle,
    asymptotic_ratio,
    census,
    census_total_from_pairs,
    h123,
    h_eichler_pizer,
    h_maximal,
    h_O8,
    h_O16,
    identity_report,
    o16_fiber_sum,
    o_isotypic,
    o_pair,
    superspecial_surface_count,
)
from core.cyclo import NTuple
from core.exceptions import DeferredCaseError, InvalidInputError
from core.numth import primes_between

GOLDEN_TOTALS = {7: 38, 11: 106, 13: 29, 23: 198}

GOLDEN_TERMS = {
    7: {(3,): 1, (4,): 3, (5,): 2, (8,): 4, (12,): 4, (1, 2): 7, (2, 3): 0, (2, 4): 6,
        (2, 6): 0, (3, 4): 0, (3, 6): 0},
    11: {(3,): 3, (4,): 3, (5,): 0, (8,): 4, (12,): 4, (1, 2): 19, (2, 3): 4, (2, 4): 10,
         (2, 6): 12, (3, 4): 4, (3, 6): 8},
    13: {(3,): 1, (4,): 1, (5,): 2, (8,): 4, (12,): 0, (1, 2): 16, (2, 3): 0, (2, 4): 0,
         (2, 6): 0, (3, 4): 0, (3, 6): 0},
    23: {(1, 2): 67, (2, 3): 6, (2, 4): 18, (2, 6): 22, (3, 4): 4, (3, 6): 8},
}


@pytest.mark.parametrize('p, total', sorted(GOLDEN_TOTALS.items()))
def test_census_totals(p, total):
    report = census(p)
    assert report.assumptions_ok
    assert report.total == total


@pytest.mark.parametrize('p', sorted(GOLDEN_TERMS))
def test_census_terms(p):
    report = census(p)
    for entries, value in GOLDEN_TERMS[p].items():
        assert report.o(*entries) == value, entries


def test_census_has_all_nineteen_terms():
    report = census(101)
    assert len(report.terms) == 19
    assert report.o(1) == report.o(2) == 1


@pytest.mark.parametrize('p, h', [(2, 1), (3, 1), (5, 1), (7, 1), (11, 2), (13, 1), (23, 3), (37, 3), (101, 9)])
def test_h_maximal(p, h):
    assert h_maximal(p) == h


def test_class_numbers_at_eleven_and_twenty_three():
    assert (h_O8(11), h_O16(11), h_eichler_pizer(11, 2), h_eichler_pizer(11, 3)) == (9, 6, 3, 4)
    assert (h_maximal(23), h_O8(23), h_O16(23)) == (3, 36, 22)


@pytest.mark.parametrize('p, bundle', [
    (7, ClassNumberBundle(h=1, h1=0, h2=1, h3=0)),
    (11, ClassNumberBundle(h=2, h1=0, h2=1, h3=1)),
    (13, ClassNumberBundle(h=1, h1=1, h2=0, h3=0)),
    (23, ClassNumberBundle(h=3, h1=1, h2=1, h3=1)),
])
def test_h123(p, bundle):
    assert h123(p) == bundle
    assert bundle.as_tuple() == (bundle.h1, bundle.h2, bundle.h3)


def test_h123_rejects_tiny_primes():
    with pytest.raises(InvalidInputError):
        h123(3)


def test_h_O16_at_three():
    assert h_O16(3) == 1


def test_eichler_class_number_rejects_bad_levels():
    with pytest.raises(InvalidInputError):
        h_eichler_pizer(11, 5)
    with pytest.raises(InvalidInputError):
        h_eichler_pizer(3, 3)


@pytest.mark.parametrize('p', [4, 1, 0, 91])
def test_census_rejects_non_primes(p):
    with pytest.raises(InvalidInputError, match="not prime"):
        census(p)


def test_census_at_two_is_partial():
    report = census(2)
    assert not report.assumptions_ok
    assert report.total is None
    assert report.o(4) is None
    assert report.o(1, 2) is None
    assert DEFERRED_NOTE in report.notes


def test_census_at_three_keeps_o12_and_o24():
    report = census(3)
    assert report.total is None
    assert report.o(1, 2) == 3
    assert report.o(1, 4) == report.o(2, 4) == 4
    assert report.o(3, 4) is None and report.o(3, 6) is None
    assert report.o(3) is None
    assert report.o(2, 3) is None


def test_census_at_five_has_terms_but_no_total():
    report = census(5)
    assert report.total is None
    assert all(value is not None for value in report.terms.values())
    assert report.notes[0] == DEFERRED_NOTE


def test_deferred_terms_raise():
    with pytest.raises(DeferredCaseError, match="deferred to sequel"):
        o_isotypic(3, 3)
    with pytest.raises(DeferredCaseError):
        o_isotypic(4, 2)
    with pytest.raises(DeferredCaseError):
        o_pair(NTuple.of(2, 6), 3)


@pytest.mark.parametrize('pair', [(2, 3), (2, 6), (3, 4), (3, 6), (1, 3), (1, 6), (4, 6)])
def test_pairs_needing_p_not_three_are_deferred(pair):
    with pytest.raises(DeferredCaseError):
        o_pair(NTuple.of(*pair), 3)


@pytest.mark.parametrize('p, o5, o8, o12', [
    (11, 0, 4, 4),
    (19, 4, 4, 4),
    (17, 2, 0, 4),
    (29, 4, 4, 4),
    (31, 0, 4, 4),
    (37, 2, 4, 0),
    (41, 0, 0, 4),
    (73, 2, 0, 0),
])
def test_quartic_terms_follow_residue_degree(p, o5, o8, o12):
    assert (o_isotypic(5, p), o_isotypic(8, p), o_isotypic(12, p)) == (o5, o8, o12)
    assert o_isotypic(10, p) == o5


def test_o24_at_three_uses_the_unramified_formula():
    assert o_pair(NTuple.of(2, 4), 3) == 4
    assert o_pair(NTuple.of(1, 4), 3) == 4


def test_o24_note_when_p_is_one_mod_four():
    assert any("o(2,4) vanishes" in note for note in census(13).notes)
    assert census(11).notes == []


def test_dagger_symmetries_hold_in_the_census():
    for p in primes_between(5, 300):
        report = census(p)
        assert report.o(3) == report.o(6)
        assert report.o(5) == report.o(10)
        assert report.o(1, 3) == report.o(2, 6)
        assert report.o(1, 4) == report.o(2, 4)
        assert report.o(1, 6) == report.o(2, 3)
        assert report.o(4, 6) == report.o(3, 4)


def test_total_equals_sum_over_admissible_pairs():
    for p in primes_between(7, 500):
        report = census(p)
        assert census_total_from_pairs(report) == report.total


def test_pair_sum_needs_full_census():
    with pytest.raises(DeferredCaseError):
        census_total_from_pairs(census(5))


def test_every_term_is_a_nonnegative_integer():
    for p in primes_between(7, 2000):
        report = census(p)
        assert all(isinstance(v, int) and v >= 0 for v in report.terms.values())


def test_identities(coset_table):
    for p in primes_between(5, 400):
        for name, (lhs, rhs) in identity_report(p, coset_table).items():
            assert lhs == rhs, (p, name)


def test_fiber_sum_matches_h_O16(coset_table):
    for p in primes_between(5, 200):
        assert o16_fiber_sum(p, coset_table) == h_O16(p)


def test_identity_report_is_conditional(coset_table):
    assert "o(2,4) = 2h + 2h(O^(2))" in identity_report(11, coset_table)
    assert "o(2,4) = 2h + 2h(O^(2))" not in identity_report(13, coset_table)
    assert "o(2,6) = 2h + 2h(O^(3))" not in identity_report(7, coset_table)


def test_eleven_mod_twelve_closed_form():
    for p in primes_between(11, 3000):
        if p % 12 != 11:
            continue
        report = census(p)
        assert 9 * report.total - p * p == 32 * p + 481 + 18 * report.o(5)


@pytest.mark.parametrize('p', [1709, 1999, 4999, 9973])
def test_asymptotic_ratio_is_close_to_one(p):
    assert abs(asymptotic_ratio(p) - 1) < Fraction(2, 100)


def test_asymptotic_envelope():
    for p in primes_between(1001, 9999)[::25]:
        assert abs(asymptotic_ratio(p) - 1) < Fraction(33, p)


def test_asymptotic_ratio_of_seven():
    assert asymptotic_ratio(7) == Fraction(342, 49)
    with pytest.raises(DeferredCaseError):
        asymptotic_ratio(5)


def test_superspecial_surface_count():
    assert superspecial_surface_count(11, 2) == 106
    assert superspecial_surface_count(11, 6) == 106
    with pytest.raises(InvalidInputError):
        superspecial_surface_count(11, 3)
    with pytest.raises(DeferredCaseError):
        superspecial_surface_count(3, 2)


def test_integrality_guard():
    with pytest.raises(classno.IntegralityError):
        classno._exact(Fraction(1, 2), "half")
