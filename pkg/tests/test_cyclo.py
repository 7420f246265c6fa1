import pytest

from core.classno import TERM_KEYS
from core.cyclo import (
    PAIR_TABLE,
    AdmissiblePair,
    NTuple,
    SplittingType,
    admissible_pair_terms,
    admissible_pairs,
    conductor,
    dagger,
    dagger_partner,
    e_of_n,
    index_OK_over_A,
    nonmaximal_prime,
    residue_degree,
    splitting_type,
)
from core.exceptions import InvalidInputError
from core.numth import primes_between


def test_ntuple_parsing_and_keys():
    pair = NTuple.parse("2,6")
    assert pair == NTuple.of(2, 6)
    assert pair.key == "2,6"
    assert str(pair) == "(2,6)"
    assert len(pair) == 2
    assert list(pair) == [2, 6]


@pytest.mark.parametrize('entries', [(), (6, 2), (3, 3), (0, 1)])
def test_ntuple_rejects_bad_entries(entries):
    with pytest.raises(InvalidInputError):
        NTuple(entries)


def test_conductor():
    assert [conductor(n) for n in (1, 2, 3, 6, 10, 12)] == [1, 1, 3, 3, 5, 12]


@pytest.mark.parametrize('n, p, expected', [
    (1, 7, SplittingType.RATIONAL),
    (2, 2, SplittingType.RATIONAL),
    (3, 7, SplittingType.QUADRATIC_SPLIT),
    (3, 11, SplittingType.QUADRATIC_INERT),
    (3, 3, SplittingType.QUADRATIC_RAMIFIED),
    (4, 2, SplittingType.QUADRATIC_RAMIFIED),
    (6, 13, SplittingType.QUADRATIC_SPLIT),
    (5, 11, SplittingType.QUARTIC_SPLIT_COMPLETELY),
    (10, 11, SplittingType.QUARTIC_SPLIT_COMPLETELY),
    (5, 7, SplittingType.QUARTIC_OTHER),
    (5, 5, SplittingType.QUARTIC_RAMIFIED),
    (8, 17, SplittingType.QUARTIC_SPLIT_COMPLETELY),
    (12, 13, SplittingType.QUARTIC_SPLIT_COMPLETELY),
    (12, 11, SplittingType.QUARTIC_OTHER),
])
def test_splitting_type(n, p, expected):
    assert splitting_type(n, p) == expected


def test_splitting_type_rejects_unsupported_n():
    with pytest.raises(InvalidInputError):
        splitting_type(7, 11)
    with pytest.raises(InvalidInputError):
        splitting_type(3, 9)


@pytest.mark.parametrize('n, p, expected', [(5, 7, 4), (8, 7, 2), (12, 11, 2), (5, 11, 1), (3, 5, 2), (1, 5, 1)])
def test_residue_degree(n, p, expected):
    assert residue_degree(n, p) == expected


def test_residue_degree_rejects_ramified_prime():
    with pytest.raises(InvalidInputError):
        residue_degree(5, 5)


@pytest.mark.parametrize('n, p, expected', [
    (1, 7, 1),
    (2, 101, 1),
    (3, 7, 2),
    (3, 11, 1),
    (4, 7, 1),
    (8, 3, 2),
    (5, 11, 4),
    (12, 13, 4),
])
def test_e_of_n(n, p, expected):
    assert e_of_n(n, p) == expected


def test_e_of_n_depends_only_on_p_mod_n():
    for n in (3, 4, 5, 8, 12):
        for p in primes_between(13, 200):
            q = next(q for q in primes_between(p + 1, p + 2000) if q % (n * 4) == p % (n * 4))
            assert e_of_n(n, p) == e_of_n(n, q)


def test_admissible_pairs_degree_one():
    pairs = admissible_pairs(1, 7)
    assert [pair.n_tuple.entries for pair in pairs] == [(1,), (2,), (4,)]
    assert all(pair.m_tuple == (1,) for pair in pairs)


def test_admissible_pairs_degree_two_at_seven():
    singles = {pair.n_tuple.entries[0]: pair.m_tuple for pair in admissible_pairs(2, 7) if len(pair.n_tuple) == 1}
    assert singles == {1: (2,), 2: (2,), 3: (1,), 4: (2,), 5: (1,), 6: (1,), 8: (1,), 10: (1,), 12: (1,)}


def test_admissible_pairs_have_degree_d():
    for p in primes_between(2, 100):
        for d in (1, 2):
            for pair in admissible_pairs(d, p):
                assert pair.degree(p) == d


def test_admissible_pairs_rejects_large_d():
    with pytest.raises(InvalidInputError):
        admissible_pairs(3, 7)


def test_admissible_terms_are_census_terms():
    keys = {key.key for key in TERM_KEYS}
    for p in primes_between(2, 200):
        assert set(admissible_pair_terms(2, p)) <= keys


def test_admissible_pair_str():
    assert str(AdmissiblePair(NTuple.of(1, 2), (1, 1))) == "(1,2; 1,1)"


@pytest.mark.parametrize('entries, image', [
    ((3,), (6,)),
    ((5,), (10,)),
    ((12,), (12,)),
    ((1, 2), (1, 2)),
    ((1, 3), (2, 6)),
    ((1, 4), (2, 4)),
    ((1, 6), (2, 3)),
    ((4, 6), (3, 4)),
    ((3, 6), (3, 6)),
])
def test_dagger(entries, image):
    assert dagger(NTuple(entries)).entries == image


def test_dagger_is_an_involution():
    for key in TERM_KEYS:
        assert dagger(dagger(key)) == key


def test_dagger_partner_lands_on_tabulated_types():
    for key in TERM_KEYS:
        partner = dagger_partner(key)
        assert partner in (key, dagger(key))
        if len(key) == 2:
            assert partner.entries in PAIR_TABLE


def test_index_matches_nonmaximal_prime():
    for entries in PAIR_TABLE:
        n_tuple = NTuple(entries)
        index = index_OK_over_A(n_tuple)
        prime = nonmaximal_prime(n_tuple)
        if prime is None:
            assert index == 1
        else:
            while index % prime == 0:
                index //= prime
            assert index == 1


def test_index_values():
    assert index_OK_over_A(NTuple.of(1, 2)) == 2
    assert index_OK_over_A(NTuple.of(2, 6)) == 3
    assert index_OK_over_A(NTuple.of(3, 6)) == 4
