import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, List, Sequence, Tuple, Union

from sympy import factorint, nextprime

from . import lattice as lat
from .exceptions import CensusError, InvalidInputError
from .numth import hilbert_symbol, is_prime, kronecker

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class QuaternionAlgebra:
    """(a, b / Q) with i^2 = a, j^2 = b, ij = -ji, ramified at p and infinity."""

    a: Fraction
    b: Fraction
    p: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def element(self, *coords: Scalar) -> "QuatElement":
        return QuatElement(self, tuple(Fraction(c) for c in coords))

    @property
    def one(self) -> "QuatElement":
        return self.element(1, 0, 0, 0)

    @property
    def i(self) -> "QuatElement":
        return self.element(0, 1, 0, 0)

    @property
    def j(self) -> "QuatElement":
        return self.element(0, 0, 1, 0)

    @property
    def k(self) -> "QuatElement":
        return self.element(0, 0, 0, 1)

    def __str__(self) -> str:
        return f"({self.a}, {self.b} / Q)"


@dataclass(frozen=True)
class QuatElement:
    algebra: QuaternionAlgebra
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != 4:
            raise ValueError("quaternion elements have exactly 4 coordinates")

    def __add__(self, other: "QuatElement") -> "QuatElement":
        return QuatElement(self.algebra, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "QuatElement") -> "QuatElement":
        return QuatElement(self.algebra, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "QuatElement":
        return QuatElement(self.algebra, tuple(-x for x in self.coords))

    def __mul__(self, other: Union["QuatElement", Scalar]) -> "QuatElement":
        if isinstance(other, QuatElement):
            return mult(self, other)
        return QuatElement(self.algebra, tuple(x * other for x in self.coords))

    def __rmul__(self, other: Scalar) -> "QuatElement":
        return QuatElement(self.algebra, tuple(other * x for x in self.coords))

    def conj(self) -> "QuatElement":
        return conj(self)

    def inverse(self) -> "QuatElement":
        n = reduced_norm(self)
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        return conj(self) * (1 / n)

    def __str__(self) -> str:
        return " + ".join(f"{c}{name}" for c, name in zip(self.coords, ("", "i", "j", "ij")) if c) or "0"


def mult(x: QuatElement, y: QuatElement) -> QuatElement:
    a, b = x.algebra.a, x.algebra.b
    x0, x1, x2, x3 = x.coords
    y0, y1, y2, y3 = y.coords
    return QuatElement(x.algebra, (
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
        x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
        x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    ))


def conj(x: QuatElement) -> QuatElement:
    x0, x1, x2, x3 = x.coords
    return QuatElement(x.algebra, (x0, -x1, -x2, -x3))


def reduced_norm(x: QuatElement) -> Fraction:
    a, b = x.algebra.a, x.algebra.b
    x0, x1, x2, x3 = x.coords
    return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3


def reduced_trace(x: QuatElement) -> Fraction:
    return 2 * x.coords[0]


def ramified_places(algebra: QuaternionAlgebra) -> List[int]:
    """Places where the algebra ramifies; 0 stands for the real place."""
    candidates = {2, algebra.p}
    for value in (algebra.a, algebra.b):
        for n in (value.numerator, value.denominator):
            candidates.update(factorint(abs(n)))
    places = [0] if hilbert_symbol(algebra.a, algebra.b, 0) == -1 else []
    places.extend(v for v in sorted(candidates) if hilbert_symbol(algebra.a, algebra.b, v) == -1)
    return places


def _auxiliary_prime(p: int) -> int:
    q = 3
    while q % 4 != 3 or kronecker(-q, p) != -1:
        q = int(nextprime(q))
    return q


def make_algebra(p: int) -> QuaternionAlgebra:
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")

    if p == 2:
        algebra = QuaternionAlgebra(-1, -1, p)
    elif p % 4 == 3:
        algebra = QuaternionAlgebra(-1, -p, p)
    elif p % 8 == 5:
        algebra = QuaternionAlgebra(-2, -p, p)
    else:
        algebra = QuaternionAlgebra(-_auxiliary_prime(p), -p, p)

    places = ramified_places(algebra)
    if places != [0, p]:
        raise CensusError(f"{algebra} ramifies at {places}, expected [0, {p}]")
    logger.debug("p=%d: algebra %s", p, algebra)
    return algebra


@dataclass(frozen=True)
class Lattice4:
    """Full-rank lattice stored as hnf / denominator in coordinates 1, i, j, ij."""

    algebra: QuaternionAlgebra
    denominator: int
    hnf: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_vectors(cls, algebra: QuaternionAlgebra, vectors: Iterable[Sequence[Scalar]]) -> "Lattice4":
        den, hnf = lat.rational_hnf(vectors)
        return cls(algebra, den, hnf)

    @classmethod
    def from_elements(cls, elements: Sequence[QuatElement]) -> "Lattice4":
        algebra = elements[0].algebra
        if any(x.algebra != algebra for x in elements):
            raise InvalidInputError("elements live in different algebras")
        return cls.from_vectors(algebra, (x.coords for x in elements))

    @cached_property
    def basis(self) -> Tuple[QuatElement, ...]:
        return tuple(
            QuatElement(self.algebra, tuple(Fraction(c, self.denominator) for c in row))
            for row in self.hnf
        )

    @cached_property
    def covolume(self) -> Fraction:
        return Fraction(lat.determinant(self.hnf), self.denominator ** 4)

    def __contains__(self, x: QuatElement) -> bool:
        return contains(self, x)


@dataclass(frozen=True)
class OrderInfo:
    lattice: Lattice4
    discriminant: int

    @classmethod
    def from_lattice(cls, lattice: Lattice4) -> "OrderInfo":
        disc = reduced_discriminant(lattice)
        if disc.denominator != 1:
            raise CensusError(f"lattice has non-integral discriminant {disc}")
        return cls(lattice, int(disc))

    @property
    def algebra(self) -> QuaternionAlgebra:
        return self.lattice.algebra

    @property
    def level(self) -> int:
        return self.discriminant // self.algebra.p

    @property
    def basis(self) -> Tuple[QuatElement, ...]:
        return self.lattice.basis


def _same_algebra(*lattices: Lattice4) -> QuaternionAlgebra:
    algebra = lattices[0].algebra
    if any(L.algebra != algebra for L in lattices):
        raise InvalidInputError("lattices live in different algebras")
    return algebra


def lattice_sum(L1: Lattice4, L2: Lattice4) -> Lattice4:
    _same_algebra(L1, L2)
    return Lattice4.from_elements([*L1.basis, *L2.basis])


def _intersect_all(lattices: Sequence[Lattice4]) -> Lattice4:
    algebra = _same_algebra(*lattices)
    duals = []
    for L in lattices:
        duals.extend(lat.dual_rows(L.denominator, L.hnf))
    den, hnf = lat.rational_hnf(duals)
    return Lattice4.from_vectors(algebra, lat.dual_rows(den, hnf))


def lattice_intersect(L1: Lattice4, L2: Lattice4) -> Lattice4:
    return _intersect_all([L1, L2])


def lattice_product(L1: Lattice4, L2: Lattice4) -> Lattice4:
    _same_algebra(L1, L2)
    return Lattice4.from_elements([x * y for x in L1.basis for y in L2.basis])


def lattice_index(L_sub: Lattice4, L_sup: Lattice4) -> Fraction:
    """[L_sup : L_sub] as a ratio of covolumes (an integer when L_sub is inside L_sup)."""
    _same_algebra(L_sub, L_sup)
    return L_sub.covolume / L_sup.covolume


def lattice_scale(L: Lattice4, c: Scalar) -> Lattice4:
    return Lattice4.from_elements([x * Fraction(c) for x in L.basis])


def lattice_left_mul(x: QuatElement, L: Lattice4) -> Lattice4:
    return Lattice4.from_elements([x * y for y in L.basis])


def lattice_right_mul(L: Lattice4, x: QuatElement) -> Lattice4:
    return Lattice4.from_elements([y * x for y in L.basis])


def lattice_conj(L: Lattice4) -> Lattice4:
    return Lattice4.from_elements([conj(y) for y in L.basis])


def coordinates(L: Lattice4, x: QuatElement) -> List[Fraction]:
    return lat.solve_coordinates(L.denominator, L.hnf, x.coords)


def contains(L: Lattice4, x: QuatElement) -> bool:
    return all(c.denominator == 1 for c in coordinates(L, x))


def gram_matrix(L: Lattice4) -> List[List[Fraction]]:
    """Gram matrix of the reduced norm form: Nrd(sum x_i b_i) = x G x^T."""
    basis = L.basis
    return [[reduced_trace(x * conj(y)) / 2 for y in basis] for x in basis]


def reduced_discriminant(L: Lattice4) -> Fraction:
    # sqrt(det Trd(b_i conj(b_j))) = sqrt(det diag(2, -2a, -2b, 2ab)) * covolume
    algebra = L.algebra
    return 4 * abs(algebra.a * algebra.b) * L.covolume


def left_order(I: Lattice4) -> OrderInfo:
    return OrderInfo.from_lattice(_intersect_all([lattice_right_mul(I, b.inverse()) for b in I.basis]))


def right_order(I: Lattice4) -> OrderInfo:
    return OrderInfo.from_lattice(_intersect_all([lattice_left_mul(b.inverse(), I) for b in I.basis]))


def _exact_sqrt(value: Fraction) -> Fraction:
    num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if num * num != value.numerator or den * den != value.denominator:
        raise CensusError(f"{value} is not the square of a rational")
    return Fraction(num, den)


def lattice_norm(I: Lattice4) -> Fraction:
    """Reduced norm of I as a right ideal of its right order."""
    return _exact_sqrt(lattice_index(I, right_order(I).lattice))


def verify_order_axioms(L: Lattice4) -> bool:
    if L.algebra.one not in L:
        return False
    elements = list(L.basis)
    for x in L.basis:
        for y in L.basis:
            xy = x * y
            if xy not in L:
                return False
            elements.append(xy)
    return all(
        reduced_trace(x).denominator == 1 and reduced_norm(x).denominator == 1
        for x in elements
    )


def _maximal_basis(algebra: QuaternionAlgebra) -> List[Tuple[Scalar, ...]]:
    p = algebra.p
    h = Fraction(1, 2)
    if p == 2:
        return [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (h, h, h, h)]
    if p % 4 == 3:
        return [(1, 0, 0, 0), (0, 1, 0, 0), (h, 0, h, 0), (0, h, 0, h)]
    if p % 8 == 5:
        return [(h, 0, h, h), (0, Fraction(1, 4), h, Fraction(1, 4)), (0, 0, 1, 0), (0, 0, 0, 1)]
    q = int(-algebra.a)
    c = next(c for c in range(q) if (p * c * c + 1) % q == 0)
    return [(h, h, 0, 0), (0, 0, h, -h), (0, Fraction(1, q), 0, Fraction(-c, q)), (0, 0, 0, 1)]


def maximal_order(algebra: QuaternionAlgebra) -> OrderInfo:
    order = OrderInfo.from_lattice(Lattice4.from_vectors(algebra, _maximal_basis(algebra)))
    if order.discriminant != algebra.p or not verify_order_axioms(order.lattice):
        raise CensusError(f"maximal order construction failed for p={algebra.p}")
    return order


def zero_divisors_mod(order: OrderInfo, ell: int) -> Iterable[QuatElement]:
    """Nonzero x in O/ell O with ell | Nrd(x), lexicographic in the basis coordinates."""
    basis = order.basis
    for coeffs in product(range(ell), repeat=4):
        if not any(coeffs):
            continue
        x = sum((b * c for b, c in zip(basis, coeffs)), order.algebra.element(0, 0, 0, 0))
        if reduced_norm(x) % ell == 0:
            yield x


def eichler_order(maximal: OrderInfo, ell: int, embedding_seed: int = 0) -> OrderInfo:
    """Eichler order Z + (ell O + x O) of level ell inside ``maximal``."""
    p = maximal.algebra.p
    if not is_prime(ell):
        raise InvalidInputError(f"level {ell} is not prime")
    if ell == p:
        raise InvalidInputError(f"level {ell} equals the ramified prime")
    if maximal.discriminant != p:
        raise InvalidInputError("eichler_order expects a maximal order")

    candidates = zero_divisors_mod(maximal, ell)
    x = None
    for _ in range(embedding_seed + 1):
        x = next(candidates, None)
    if x is None:
        raise InvalidInputError(f"embedding seed {embedding_seed} is out of range")

    ideal = lattice_sum(lattice_scale(maximal.lattice, ell), lattice_left_mul(x, maximal.lattice))
    order = OrderInfo.from_lattice(Lattice4.from_elements([maximal.algebra.one, *ideal.basis]))
    if order.discriminant != p * ell:
        raise CensusError(f"Eichler order of level {ell} has discriminant {order.discriminant}")
    logger.debug("p=%d: Eichler order of level %d from zero divisor %s", p, ell, x)
    return order
