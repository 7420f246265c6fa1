import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, List, Optional, Set, Tuple

from sympy import primefactors
from sympy.combinatorics import Permutation, PermutationGroup

from config import Config
from .classno import ClassNumberBundle
from .exceptions import (
    EnumerationBoundError,
    InvalidInputError,
    MassMismatchError,
    UnexpectedUnitGroupError,
)
from .lattice import short_vectors
from .quatalg import (
    Lattice4,
    OrderInfo,
    eichler_order,
    gram_matrix,
    lattice_conj,
    lattice_left_mul,
    lattice_norm,
    lattice_product,
    lattice_scale,
    lattice_sum,
    left_order,
    make_algebra,
    maximal_order,
    reduced_norm,
)

logger = logging.getLogger(__name__)

ALLOWED_UNIT_ORDERS = (2, 4, 6, 8, 12, 24)
NEIGHBOR_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass
class IdealClassSet:
    order: OrderInfo
    representatives: List[Lattice4]
    unit_orders: List[int]
    norms: List[int] = field(default_factory=list)

    @property
    def class_number(self) -> int:
        return len(self.representatives)

    @property
    def mass(self) -> Fraction:
        return sum((Fraction(2, u) for u in self.unit_orders), Fraction(0))


@dataclass(frozen=True)
class DoubleCosetTable:
    entries: Tuple[Tuple[int, ...], ...]

    def __getitem__(self, index: Tuple[int, int]) -> int:
        """1-based lookup c[j1][j2] for the cyclic subgroups C_1, C_2, C_3."""
        j1, j2 = index
        return self.entries[j1 - 1][j2 - 1]


def eichler_mass(p: int, level: int = 1) -> Fraction:
    """Sum of 2/|O_l(I)^x| over the right ideal classes of a level-N Eichler order."""
    mass = Fraction(p - 1, 12)
    for ell in primefactors(level):
        mass *= ell + 1
    return mass


def unit_group_order(order: OrderInfo) -> int:
    count = sum(1 for _ in short_vectors(gram_matrix(order.lattice), 1))
    if count not in ALLOWED_UNIT_ORDERS:
        raise UnexpectedUnitGroupError(f"unit group of order {count} in a definite quaternion order")
    return count


def are_equivalent(I: Lattice4, J: Lattice4, norm_i: Optional[Fraction] = None,
                   norm_j: Optional[Fraction] = None) -> bool:
    """Whether J = alpha I for some alpha, for right ideals of the same order."""
    norm_i = lattice_norm(I) if norm_i is None else norm_i
    norm_j = lattice_norm(J) if norm_j is None else norm_j
    # alpha * Nrd(I) lies in J conj(I) and has reduced norm Nrd(I) Nrd(J), the minimum there
    lattice = lattice_product(J, lattice_conj(I))
    found = next(iter(short_vectors(gram_matrix(lattice), norm_i * norm_j)), None)
    return found is not None


@dataclass
class _ClassRecord:
    ideal: Lattice4
    norm: int
    left: OrderInfo
    unit_order: int


class RightIdealClassEnumerator:
    """Walks q-neighbor graphs from the order itself until the mass is reached."""

    def __init__(self, order: OrderInfo, bound: Optional[int] = None):
        self.order = order
        self.bound = Config.CENSUS_ENUM_BOUND if bound is None else bound
        self.target_mass = eichler_mass(order.algebra.p, order.level)
        self._records: List[_ClassRecord] = []
        self._seen: Set[Lattice4] = set()
        self._mass = Fraction(0)

    def run(self) -> IdealClassSet:
        if self.order.discriminant > self.bound:
            raise EnumerationBoundError(
                f"discriminant {self.order.discriminant} exceeds the enumeration bound {self.bound}"
            )

        self._classify(self.order.lattice, 1)
        for q in self._neighbor_primes():
            if self._mass == self.target_mass:
                break
            logger.debug("disc=%d: walking %d-neighbors from %d classes",
                         self.order.discriminant, q, len(self._records))
            self._walk(q)

        if self._mass != self.target_mass:
            raise MassMismatchError(
                f"found mass {self._mass}, expected {self.target_mass} "
                f"after exhausting neighbor primes {list(self._neighbor_primes())}"
            )

        records = sorted(self._records, key=lambda r: (r.norm, r.ideal.denominator, r.ideal.hnf))
        logger.info("disc=%d: %d ideal classes", self.order.discriminant, len(records))
        return IdealClassSet(
            order=self.order,
            representatives=[r.ideal for r in records],
            unit_orders=[r.unit_order for r in records],
            norms=[r.norm for r in records],
        )

    def _neighbor_primes(self) -> Iterator[int]:
        return (q for q in NEIGHBOR_PRIMES if self.order.discriminant % q)

    def _walk(self, q: int) -> None:
        frontier = list(self._records)
        while frontier:
            record = frontier.pop(0)
            for ideal in self._neighbors(record, q):
                new = self._classify(ideal, record.norm * q)
                if new is not None:
                    frontier.append(new)
                if self._mass == self.target_mass:
                    return

    def _neighbors(self, record: _ClassRecord, q: int) -> Iterator[Lattice4]:
        left = record.left.lattice
        basis = left.basis
        zero = self.order.algebra.element(0, 0, 0, 0)
        q_left = lattice_scale(left, q)
        local: Set[Lattice4] = set()
        for coeffs in product(range(q), repeat=4):
            if not any(coeffs):
                continue
            alpha = sum((b * c for b, c in zip(basis, coeffs)), zero)
            if reduced_norm(alpha) % q:
                continue
            step = lattice_sum(lattice_left_mul(alpha, left), q_left)
            if step in local:
                continue
            local.add(step)
            yield lattice_product(step, record.ideal)

    def _classify(self, ideal: Lattice4, norm: int) -> Optional[_ClassRecord]:
        if ideal in self._seen:
            return None
        self._seen.add(ideal)

        left = left_order(ideal)
        units = unit_group_order(left)
        for record in self._records:
            if record.unit_order == units and are_equivalent(record.ideal, ideal, record.norm, norm):
                return None

        record = _ClassRecord(ideal=ideal, norm=norm, left=left, unit_order=units)
        self._records.append(record)
        self._mass += Fraction(2, units)
        if self._mass > self.target_mass:
            raise MassMismatchError(f"mass {self._mass} overshoots {self.target_mass}")
        return record


def enumerate_right_ideal_classes(order: OrderInfo, bound: Optional[int] = None) -> IdealClassSet:
    return RightIdealClassEnumerator(order, bound).run()


def unit_orders_census(p: int, bound: Optional[int] = None) -> List[int]:
    classes = enumerate_right_ideal_classes(maximal_order(make_algebra(p)), bound)
    return sorted(classes.unit_orders)


def h123_bruteforce(p: int, bound: Optional[int] = None) -> ClassNumberBundle:
    if p < 5:
        raise InvalidInputError("brute-force h1, h2, h3 needs p >= 5")
    classes = enumerate_right_ideal_classes(maximal_order(make_algebra(p)), bound)
    counts = Counter(classes.unit_orders)
    unexpected = sorted(set(counts) - {2, 4, 6})
    if unexpected:
        raise UnexpectedUnitGroupError(f"p={p}: unit orders {unexpected} cannot occur for p >= 5")
    return ClassNumberBundle(h=classes.class_number, h1=counts[2], h2=counts[4], h3=counts[6])


def h_eichler_bruteforce(p: int, ell: int, bound: Optional[int] = None) -> int:
    order = eichler_order(maximal_order(make_algebra(p)), ell)
    return enumerate_right_ideal_classes(order, bound).class_number


def _cyclic_subgroups() -> List[List[Permutation]]:
    generators = [Permutation(2), Permutation(2)(0, 1), Permutation(2)(0, 1, 2)]
    return [list(PermutationGroup([g]).generate()) for g in generators]


def double_coset_table() -> DoubleCosetTable:
    """c[j1][j2] = |C_j1 \\ S_3 / C_j2| for C_1 trivial, C_2 = <(0 1)>, C_3 = <(0 1 2)>."""
    group = list(PermutationGroup([Permutation(2)(0, 1), Permutation(2)(0, 1, 2)]).generate())
    subgroups = _cyclic_subgroups()

    rows = []
    for left in subgroups:
        row = []
        for right in subgroups:
            orbits = {
                frozenset(tuple((c1 * g * c2 ** -1).array_form) for c1 in left for c2 in right)
                for g in group
            }
            row.append(len(orbits))
        rows.append(tuple(row))
    return DoubleCosetTable(tuple(rows))


def count_eichler_lattices(n: int, m: int) -> int:
    """Number of (s, t) with s_1 + ... + s_w = m, s_i >= 1 and n >= t_1 > ... > t_w >= 0."""
    if n < 0 or m < 1:
        raise InvalidInputError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    return sum(math.comb(n + 1, w) * math.comb(m - 1, w - 1) for w in range(1, min(m, n + 1) + 1))


def eichler_lattice_types(n: int, m: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """The (s, t) pairs themselves, by direct enumeration."""
    if n < 0 or m < 1:
        raise InvalidInputError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    for w in range(1, min(m, n + 1) + 1):
        for t in combinations(range(n, -1, -1), w):
            for cuts in combinations(range(1, m), w - 1):
                bounds = (0, *cuts, m)
                yield tuple(b - a for a, b in zip(bounds, bounds[1:])), t
