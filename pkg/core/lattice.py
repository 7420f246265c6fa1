"""Exact integer lattice kernels: Hermite normal form, duals, LLL and short vectors.

Everything here works on plain coordinate rows. The quaternion layer in
``quatalg`` feeds it coordinates with respect to 1, i, j, ij.
"""
import math
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from fpylll import GSO, LLL, IntegerMatrix

from .exceptions import CensusError

IntMatrix = Tuple[Tuple[int, ...], ...]


class LatticeRankError(CensusError, ArithmeticError):
    """Raised when a spanning set does not have full rank."""


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    # x * a + y * b == g throughout
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def hermite_normal_form(vectors: Iterable[Sequence[int]], dimension: int = 4) -> IntMatrix:
    """Row-style HNF of the integer span of ``vectors``.

    Upper triangular with positive pivots, entries above each pivot reduced
    into [0, pivot). Raises LatticeRankError unless the span has full rank.
    """
    rows: List[Optional[List[int]]] = [None] * dimension

    for vec0 in vectors:
        vec = [int(c) for c in vec0]
        if len(vec) != dimension:
            raise ValueError(f"expected {dimension} coordinates, got {len(vec)}")
        for j in range(dimension):
            b = vec[j]
            if b == 0:
                continue
            row = rows[j]
            if row is None:
                rows[j] = vec
                break
            a = row[j]
            if b % a == 0:
                q = b // a
                vec = [v - q * r for v, r in zip(vec, row)]
            else:
                x, y, g = xgcd(a, b)
                ag, bg = a // g, b // g
                rows[j] = [x * r + y * v for r, v in zip(row, vec)]
                vec = [ag * v - bg * r for r, v in zip(row, vec)]

    if any(row is None for row in rows):
        raise LatticeRankError("lattice does not have full rank")

    for j in range(dimension):
        if rows[j][j] < 0:
            rows[j] = [-c for c in rows[j]]
    for j in range(dimension):
        pivot = rows[j][j]
        for i in range(j):
            q = rows[i][j] // pivot
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[j])]

    return tuple(tuple(row) for row in rows)


def rational_hnf(vectors: Iterable[Sequence[Fraction]], dimension: int = 4) -> Tuple[int, IntMatrix]:
    """Canonical (denominator, HNF) pair with the lattice equal to HNF / denominator."""
    vectors = [[Fraction(c) for c in vec] for vec in vectors]
    den = 1
    for vec in vectors:
        for c in vec:
            den = den * c.denominator // math.gcd(den, c.denominator)

    hnf = hermite_normal_form(([int(c * den) for c in vec] for vec in vectors), dimension)

    g = den
    for row in hnf:
        for c in row:
            g = math.gcd(g, c)
    if g > 1:
        den //= g
        hnf = tuple(tuple(c // g for c in row) for row in hnf)
    return den, hnf


def determinant(hnf: IntMatrix) -> int:
    return math.prod(hnf[i][i] for i in range(len(hnf)))


def upper_inverse(hnf: IntMatrix) -> List[List[Fraction]]:
    n = len(hnf)
    inv = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1, -1, -1):
        inv[i][i] = Fraction(1, hnf[i][i])
        for j in range(i + 1, n):
            s = sum((hnf[i][k] * inv[k][j] for k in range(i + 1, j + 1)), Fraction(0))
            inv[i][j] = -s / hnf[i][i]
    return inv


def solve_coordinates(den: int, hnf: IntMatrix, vector: Sequence[Fraction]) -> List[Fraction]:
    """Coefficients c with sum(c_i * row_i) / den == vector."""
    n = len(hnf)
    target = [Fraction(v) * den for v in vector]
    coeffs = [Fraction(0)] * n
    for j in range(n):
        c = target[j] / hnf[j][j]
        coeffs[j] = c
        for k in range(j, n):
            target[k] -= c * hnf[j][k]
    return coeffs


def dual_rows(den: int, hnf: IntMatrix) -> List[List[Fraction]]:
    """Basis of the dual lattice for the standard dot product."""
    inv = upper_inverse(hnf)
    n = len(hnf)
    # (B^-1)^T with B = hnf / den
    return [[den * inv[i][j] for i in range(n)] for j in range(n)]


def transform_gram(gram: Sequence[Sequence[Fraction]], basis: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    n = len(gram)
    half = [[sum((row[k] * gram[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for row in basis]
    return [[sum((half[i][k] * basis[j][k] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def lll_reduce(gram: Sequence[Sequence[Fraction]], delta: float = 0.99) -> List[List[int]]:
    """LLL on a positive definite Gram matrix, done by fplll.

    The denominators are cleared first. Returns the unimodular change of
    basis U; the reduced Gram matrix is U * gram * U^T.
    """
    rows = [[Fraction(c) for c in row] for row in gram]
    n = len(rows)
    den = math.lcm(*(c.denominator for row in rows for c in row))

    int_gram = IntegerMatrix.from_matrix([[int(c * den) for c in row] for row in rows])
    transform = IntegerMatrix.identity(n)
    gso = GSO.Mat(int_gram, U=transform, flags=GSO.INT_GRAM, gram=True)
    LLL.Reduction(gso, delta=delta)()
    return [[int(transform[i, j]) for j in range(n)] for i in range(n)]


def _cholesky(gram: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    n = len(gram)
    q = [[Fraction(c) for c in row] for row in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("quadratic form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _enumerate(q: List[List[Fraction]], bound: Fraction) -> Iterator[Tuple[Tuple[int, ...], Fraction]]:
    n = len(q)
    x = [0] * n

    def level(i: int, remaining: Fraction) -> Iterator[Tuple[Tuple[int, ...], Fraction]]:
        center = -sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        start = math.floor(center + Fraction(1, 2))
        for step in (1, -1):
            xi = start if step == 1 else start - 1
            while True:
                t = xi - center
                cost = q[i][i] * t * t
                if cost > remaining:
                    break
                x[i] = xi
                if i == 0:
                    if any(x):
                        yield tuple(x), bound - (remaining - cost)
                else:
                    yield from level(i - 1, remaining - cost)
                xi += step
        x[i] = 0

    yield from level(n - 1, bound)


def short_vectors(
    gram: Sequence[Sequence[Fraction]],
    bound: Fraction,
    reduce: bool = True,
) -> Iterator[Tuple[Tuple[int, ...], Fraction]]:
    """All nonzero x with x * gram * x^T <= bound, as (x, value) pairs.

    Fincke-Pohst enumeration in exact arithmetic. With ``reduce`` the form
    is LLL-reduced first and coordinates are mapped back to the input basis.
    """
    bound = Fraction(bound)
    n = len(gram)
    if not reduce:
        yield from _enumerate(_cholesky(gram), bound)
        return

    basis = lll_reduce(gram)
    reduced = transform_gram([[Fraction(c) for c in row] for row in gram], basis)
    for y, value in _enumerate(_cholesky(reduced), bound):
        x = tuple(sum(y[i] * basis[i][j] for i in range(n)) for j in range(n))
        yield x, value
