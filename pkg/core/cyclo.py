import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Dict, List, Optional, Tuple

from sympy import Poly, Symbol
from sympy.ntheory import n_order

from .exceptions import InvalidInputError
from .numth import cyclotomic_poly, euler_phi, is_prime, kronecker

logger = logging.getLogger(__name__)

SUPPORTED_N: Tuple[int, ...] = (1, 2, 3, 4, 5, 6, 8, 10, 12)

# discriminants of the imaginary quadratic K_n
_QUADRATIC_DISC = {3: -3, 4: -4, 6: -3}

# pair types the closed forms are written for, with the prime at which
# A_n fails to be maximal and the residue condition on p for the formula
PAIR_TABLE: Dict[Tuple[int, int], Tuple[Optional[int], str]] = {
    (1, 2): (2, "p != 2"),
    (2, 3): (None, "p = 2 (mod 3)"),
    (2, 4): (2, "p = 3 (mod 4)"),
    (2, 6): (3, "p = 2 (mod 3)"),
    (3, 4): (None, "p = 11 (mod 12)"),
    (3, 6): (2, "p = 2 (mod 3), p != 2"),
}


class SplittingType(str, Enum):
    RATIONAL = "rational"
    QUADRATIC_SPLIT = "quadratic-split"
    QUADRATIC_INERT = "quadratic-inert"
    QUADRATIC_RAMIFIED = "quadratic-ramified"
    QUARTIC_SPLIT_COMPLETELY = "quartic-split-completely"
    QUARTIC_OTHER = "quartic-other"
    QUARTIC_RAMIFIED = "quartic-ramified"


@dataclass(frozen=True, order=True)
class NTuple:
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(n) for n in self.entries)
        if not entries:
            raise InvalidInputError("n-tuple must have at least one entry")
        if entries[0] < 1 or any(a >= b for a, b in zip(entries, entries[1:])):
            raise InvalidInputError(f"n-tuple must be strictly increasing positive integers: {entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> "NTuple":
        return cls(tuple(entries))

    @classmethod
    def parse(cls, key: str) -> "NTuple":
        try:
            return cls(tuple(int(part) for part in key.split(",")))
        except ValueError as exc:
            raise InvalidInputError(f"bad n-tuple key {key!r}") from exc

    @property
    def key(self) -> str:
        return ",".join(str(n) for n in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return f"({self.key})"


@dataclass(frozen=True, order=True)
class AdmissiblePair:
    n_tuple: NTuple
    m_tuple: Tuple[int, ...]

    def degree(self, p: int) -> int:
        return sum(m * e_of_n(n, p) for n, m in zip(self.n_tuple, self.m_tuple))

    def __str__(self) -> str:
        return f"({self.n_tuple.key}; {','.join(str(m) for m in self.m_tuple)})"


def _check_supported(n: int) -> None:
    if n not in SUPPORTED_N:
        raise InvalidInputError(f"n = {n} is not supported; expected one of {SUPPORTED_N}")


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")


def conductor(n: int) -> int:
    """Conductor of Q(zeta_n); zeta_n and zeta_{2n} generate the same field for odd n."""
    return n // 2 if n % 4 == 2 else n


def splitting_type(n: int, p: int) -> SplittingType:
    _check_supported(n)
    _check_prime(p)

    phi = euler_phi(n)
    if phi == 1:
        return SplittingType.RATIONAL

    if phi == 2:
        symbol = kronecker(_QUADRATIC_DISC[n], p)
        if symbol == 0:
            return SplittingType.QUADRATIC_RAMIFIED
        if symbol == 1:
            return SplittingType.QUADRATIC_SPLIT
        return SplittingType.QUADRATIC_INERT

    f = conductor(n)
    if f % p == 0:
        return SplittingType.QUARTIC_RAMIFIED
    if p % f == 1:
        return SplittingType.QUARTIC_SPLIT_COMPLETELY
    return SplittingType.QUARTIC_OTHER


def residue_degree(n: int, p: int) -> int:
    """Order of p in (Z/f)^x for the conductor f of K_n; p must not ramify."""
    _check_supported(n)
    _check_prime(p)
    f = conductor(n)
    if f == 1:
        return 1
    if f % p == 0:
        raise InvalidInputError(f"p = {p} ramifies in K_{n}")
    return int(n_order(p, f))


def e_of_n(n: int, p: int) -> int:
    """Smallest e such that K_n embeds in Mat_e(D_{p,inf})."""
    kind = splitting_type(n, p)
    if kind in (SplittingType.RATIONAL, SplittingType.QUADRATIC_INERT, SplittingType.QUADRATIC_RAMIFIED):
        return 1
    if kind == SplittingType.QUADRATIC_SPLIT:
        return 2
    if kind == SplittingType.QUARTIC_SPLIT_COMPLETELY:
        return 4
    return 2


def admissible_pairs(d: int, p: int) -> List[AdmissiblePair]:
    if d < 1:
        raise InvalidInputError(f"d must be positive, got {d}")
    if d > 2:
        raise InvalidInputError("admissible pairs are only tabulated for d <= 2")
    _check_prime(p)

    e = {n: e_of_n(n, p) for n in SUPPORTED_N}
    pairs = []
    for r in range(1, d + 1):
        for ns in combinations(SUPPORTED_N, r):
            for ms in product(range(1, d + 1), repeat=r):
                if sum(m * e[n] for n, m in zip(ns, ms)) == d:
                    pairs.append(AdmissiblePair(NTuple(ns), ms))

    pairs.sort(key=lambda pair: (pair.n_tuple.entries, pair.m_tuple))
    logger.debug("p=%d d=%d: %d admissible pairs", p, d, len(pairs))
    return pairs


def admissible_pair_terms(d: int, p: int) -> Dict[str, AdmissiblePair]:
    """Admissible pairs keyed by their n-tuple.

    For d <= 2 the m-tuple is determined by the n-tuple, so each census term
    belongs to exactly one pair.
    """
    terms = {}
    for pair in admissible_pairs(d, p):
        key = pair.n_tuple.key
        if key in terms:
            raise InvalidInputError(f"n-tuple {key} admits several m-tuples for d = {d}")
        terms[key] = pair
    return terms


def _dagger_entry(n: int) -> int:
    if n % 2:
        return 2 * n
    if n % 4 == 0:
        return n
    return n // 2


def dagger(n_tuple: NTuple) -> NTuple:
    return NTuple(tuple(sorted(_dagger_entry(n) for n in n_tuple)))


def dagger_partner(n_tuple: NTuple) -> NTuple:
    """The member of {n, n-dagger} that the closed forms are written for."""
    if len(n_tuple) == 1:
        partner = dagger(n_tuple)
        n = n_tuple.entries[0]
        # o(1) = o(2), o(3) = o(6), o(5) = o(10); 4, 8, 12 are fixed
        return n_tuple if n in (1, 2, 4, 8, 12) or n < partner.entries[0] else partner

    if n_tuple.entries in PAIR_TABLE:
        return n_tuple
    partner = dagger(n_tuple)
    if partner.entries in PAIR_TABLE:
        return partner
    raise InvalidInputError(f"no closed form covers {n_tuple} or its dagger {partner}")


def _order_polynomials(n_tuple: NTuple) -> List[Poly]:
    t = Symbol("T")
    return [Poly(list(reversed(cyclotomic_poly(n).coeffs)), t) for n in n_tuple]


def index_OK_over_A(n_tuple: NTuple) -> int:
    """[O_K : A] for K = K_{n1} x K_{n2} and A = Z[T]/(Phi_{n1} Phi_{n2})."""
    if n_tuple.entries not in PAIR_TABLE:
        raise InvalidInputError(f"index is tabulated only for {sorted(PAIR_TABLE)}, got {n_tuple}")
    f, g = _order_polynomials(n_tuple)
    return abs(int(f.resultant(g)))


def nonmaximal_prime(n_tuple: NTuple) -> Optional[int]:
    """The prime at which A_n is not maximal, or None when A_n = O_K."""
    if n_tuple.entries not in PAIR_TABLE:
        raise InvalidInputError(f"{n_tuple} is not a tabulated pair type")
    return PAIR_TABLE[n_tuple.entries][0]


def pair_condition(n_tuple: NTuple) -> str:
    if n_tuple.entries not in PAIR_TABLE:
        raise InvalidInputError(f"{n_tuple} is not a tabulated pair type")
    return PAIR_TABLE[n_tuple.entries][1]
