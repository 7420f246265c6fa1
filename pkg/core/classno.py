"""Closed-form class numbers and the o(n) terms of the GL_2 census.

Every formula is evaluated in exact rationals and must land on a
nonnegative integer; anything else raises IntegralityError.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclo import NTuple, admissible_pair_terms, dagger_partner, pair_condition, residue_degree
from .exceptions import DeferredCaseError, IntegralityError, InvalidInputError
from .numth import is_prime, kronecker, legendre_pair

logger = logging.getLogger(__name__)

SINGLE_KEYS: Tuple[NTuple, ...] = tuple(NTuple.of(n) for n in (1, 2, 3, 4, 5, 6, 8, 10, 12))
PAIR_KEYS: Tuple[NTuple, ...] = tuple(
    NTuple.of(*pair)
    for pair in ((1, 2), (1, 3), (1, 4), (1, 6), (2, 3), (2, 4), (2, 6), (3, 4), (3, 6), (4, 6))
)
TERM_KEYS: Tuple[NTuple, ...] = SINGLE_KEYS + PAIR_KEYS

# primes excluded by the standing assumptions of the census
SMALL_PRIMES = (2, 3, 5)

DEFERRED_NOTE = "full census deferred (ramified small prime)"

# pair types whose closed forms need p != 3
P3_DEFERRED = ((2, 3), (2, 6), (3, 4), (3, 6))


@dataclass(frozen=True)
class ClassNumberBundle:
    h: int
    h1: int
    h2: int
    h3: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.h1, self.h2, self.h3)


@dataclass
class CensusReport:
    p: int
    terms: Dict[NTuple, Optional[int]]
    total: Optional[int]
    assumptions_ok: bool
    notes: List[str] = field(default_factory=list)

    def o(self, *entries: int) -> Optional[int]:
        return self.terms[NTuple(entries)]


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")


def _exact(value: Fraction, label: str) -> int:
    if value.denominator != 1 or value < 0:
        raise IntegralityError(f"{label} evaluated to {value}, expected a nonnegative integer")
    return int(value)


def h_maximal(p: int) -> int:
    """Class number of a maximal order in D_{p,inf}."""
    _require_prime(p)
    s3, s4 = legendre_pair(p)
    value = Fraction(p - 1, 12) + Fraction(1, 3) * (1 - s3) + Fraction(1, 4) * (1 - s4)
    return _exact(value, f"h({p})")


def h_eichler_pizer(p: int, ell: int) -> int:
    """Class number of an Eichler order of prime level ell in {2, 3}."""
    _require_prime(p)
    if ell not in (2, 3):
        raise InvalidInputError(f"level must be 2 or 3, got {ell}")
    if p == ell:
        raise InvalidInputError(f"level {ell} must differ from p")

    s3, s4 = legendre_pair(p)
    value = (
        Fraction((p - 1) * (ell + 1), 12)
        + Fraction(1, 3) * (1 - s3) * (1 + kronecker(-3, ell))
        + Fraction(1, 4) * (1 - s4) * (1 + kronecker(-4, ell))
    )
    return _exact(value, f"h_E({p}, {ell})")


def h123(p: int) -> ClassNumberBundle:
    _require_prime(p)
    if p in (2, 3):
        raise InvalidInputError("h1, h2, h3 are only defined here for p >= 5")
    s3, s4 = legendre_pair(p)
    h = h_maximal(p)
    h2 = _exact(Fraction(1 - s4, 2), f"h2({p})")
    h3 = _exact(Fraction(1 - s3, 2), f"h3({p})")
    return ClassNumberBundle(h=h, h1=_exact(Fraction(h - h2 - h3), f"h1({p})"), h2=h2, h3=h3)


def h_O8(p: int) -> int:
    _require_prime(p)
    if p == 2:
        raise InvalidInputError("h(O8) needs p odd")
    _, s4 = legendre_pair(p)
    return _exact(Fraction((p - s4) ** 2, 16), f"h_O8({p})")


def h_O16(p: int) -> int:
    _require_prime(p)
    if p == 2:
        raise InvalidInputError("h(O16) needs p odd")
    if p == 3:
        return 1
    s3, s4 = legendre_pair(p)
    value = Fraction((p - 1) ** 2, 24) + Fraction(1, 4) * (1 - s4) + Fraction(2, 3) * (1 - s3)
    return _exact(value, f"h_O16({p})")


def o_isotypic(n: int, p: int) -> int:
    _require_prime(p)
    key = dagger_partner(NTuple.of(n))
    n = key.entries[0]
    s3, s4 = legendre_pair(p)

    if n in (1, 2):
        return 1
    if n == 3:
        if p == 3:
            raise DeferredCaseError()
        return _exact(Fraction(2 - s3), f"o(3) at {p}")
    if n == 4:
        if p == 2:
            raise DeferredCaseError()
        return _exact(Fraction(2 - s4), f"o(4) at {p}")
    if n == 5:
        if p == 5:
            return 1
        # keyed by the residue degree of p in Q(zeta_5)
        return {1: 0, 2: 4, 4: 2}[residue_degree(5, p)]
    if n == 8:
        if p == 2:
            return 1
        return 0 if residue_degree(8, p) == 1 else 4
    if n == 12:
        if p in (2, 3):
            return 3
        return 0 if residue_degree(12, p) == 1 else 4
    raise InvalidInputError(f"no isotypic term for n = {n}")


def _o_12(p: int, s3: int, s4: int) -> Fraction:
    if p == 3:
        return Fraction(3)
    return (
        Fraction((p - 1) ** 2, 9)
        + Fraction(p + 15, 18) * (1 - s3)
        + Fraction(p + 2, 6) * (1 - s4)
        + Fraction(1, 6) * (1 - s3) * (1 - s4)
    )


def o_pair(n_tuple: NTuple, p: int) -> int:
    _require_prime(p)
    if len(n_tuple) != 2:
        raise InvalidInputError(f"o_pair needs a pair, got {n_tuple}")
    key = dagger_partner(n_tuple).entries
    if p == 2:
        raise DeferredCaseError()
    if p == 3 and key in P3_DEFERRED:
        raise DeferredCaseError()

    s3, s4 = legendre_pair(p)
    if key == (1, 2):
        value = _o_12(p, s3, s4)
    elif key == (2, 3):
        value = Fraction((1 - s3) * h_maximal(p))
    elif key == (2, 4):
        value = (Fraction(p + 3, 3) - Fraction(s3, 3)) * (1 - s4)
    elif key == (2, 6):
        value = (Fraction(5 * p + 18, 12) + Fraction(s3, 3) - Fraction(s4, 4)) * (1 - s3)
    elif key == (3, 4):
        value = Fraction((1 - s3) * (1 - s4))
    else:
        value = Fraction(2 * (1 - s3) ** 2)
    return _exact(value, f"o{n_tuple} at {p}")


def o_term(n_tuple: NTuple, p: int) -> int:
    if len(n_tuple) == 1:
        return o_isotypic(n_tuple.entries[0], p)
    return o_pair(n_tuple, p)


def _grouped_total(report: CensusReport) -> int:
    o = report.o
    return (
        2 + 2 * o(3) + o(4) + 2 * o(5) + o(8) + o(12)
        + o(1, 2) + 2 * o(2, 3) + 2 * o(2, 4) + 2 * o(2, 6) + 2 * o(3, 4) + o(3, 6)
    )


def census(p: int) -> CensusReport:
    _require_prime(p)
    assumptions_ok = p not in SMALL_PRIMES
    terms: Dict[NTuple, Optional[int]] = {}
    deferred = []
    for key in TERM_KEYS:
        try:
            terms[key] = o_term(key, p)
        except DeferredCaseError:
            terms[key] = None
            deferred.append(key.key)

    report = CensusReport(p=p, terms=terms, total=None, assumptions_ok=assumptions_ok)
    if assumptions_ok:
        report.total = _grouped_total(report)
    else:
        report.notes.append(DEFERRED_NOTE)
        if deferred:
            report.notes.append("terms without a closed form: " + "; ".join(deferred))
        logger.warning("p=%d: census is partial, total withheld", p)

    if p != 2 and p % 4 == 1:
        report.notes.append(f"o(2,4) vanishes: table condition {pair_condition(NTuple.of(2, 4))} fails")
    return report


def census_total_from_pairs(report: CensusReport) -> int:
    """Total as the plain sum of o(n) over the admissible pairs for d = 2."""
    if not report.assumptions_ok:
        raise DeferredCaseError(DEFERRED_NOTE)
    admissible = admissible_pair_terms(2, report.p)
    return sum(report.terms[key] for key in TERM_KEYS if key.key in admissible)


def asymptotic_ratio(p: int) -> Fraction:
    report = census(p)
    if report.total is None:
        raise DeferredCaseError(DEFERRED_NOTE)
    return Fraction(9 * report.total, p * p)


def superspecial_surface_count(p: int, a: int) -> int:
    """Superspecial abelian surfaces over F_{p^a} up to isomorphism, a even."""
    if a < 2 or a % 2:
        raise InvalidInputError(f"only even field degrees are covered, got a = {a}")
    report = census(p)
    if report.total is None:
        raise DeferredCaseError(DEFERRED_NOTE)
    return report.total


def o16_fiber_sum(p: int, coset_table: Sequence[Sequence[int]]) -> int:
    bundle = h123(p)
    h = (bundle.h1, bundle.h2, bundle.h3)
    return sum(h[j1] * h[j2] * coset_table[j1][j2] for j1 in range(3) for j2 in range(3))


def identity_report(p: int, coset_table: Sequence[Sequence[int]]) -> Dict[str, Tuple[int, int]]:
    """Decomposition identities for one prime p >= 5, as name -> (lhs, rhs)."""
    if p in SMALL_PRIMES[:2]:
        raise InvalidInputError("identities are checked for p >= 5")
    s3, s4 = legendre_pair(p)
    h = h_maximal(p)
    bundle = h123(p)
    h_e2 = h_eichler_pizer(p, 2)
    h_e3 = h_eichler_pizer(p, 3)

    identities = {
        "o(1,2) = h^2 + h(O8) + h(O16)": (o_pair(NTuple.of(1, 2), p), h * h + h_O8(p) + h_O16(p)),
        "o(2,3) = (1 - (-3/p)) h": (o_pair(NTuple.of(2, 3), p), (1 - s3) * h),
        "h(O8) = h(O^(2))^2": (h_O8(p), h_e2 * h_e2),
        "h = h1 + h2 + h3": (h, bundle.h1 + bundle.h2 + bundle.h3),
        "h(O16) = fiber sum": (h_O16(p), o16_fiber_sum(p, coset_table)),
        "4 h(O^(2)) = p - (-4/p)": (4 * h_e2, p - s4),
        "3 h(O^(3)) = p - (-3/p)": (3 * h_e3, p - s3),
    }
    if p % 4 == 3:
        identities["o(2,4) = 2h + 2h(O^(2))"] = (o_pair(NTuple.of(2, 4), p), 2 * h + 2 * h_e2)
    if p % 3 == 2:
        identities["o(2,6) = 2h + 2h(O^(3))"] = (o_pair(NTuple.of(2, 6), p), 2 * h + 2 * h_e3)
    return identities
