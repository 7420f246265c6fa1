from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from sympy import Poly, Symbol, factorint, isprime, jacobi_symbol, primerange, totient
from sympy import cyclotomic_poly as sympy_cyclotomic_poly

from .exceptions import InvalidInputError

Rational = Union[int, Fraction]

_T = Symbol("T")


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in T, coefficients lowest degree first."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __call__(self, t: Rational) -> Rational:
        value = 0
        for c in reversed(self.coeffs):
            value = value * t + c
        return value

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                body = "T" if power == 1 else f"T^{power}"
                if mag != 1:
                    body = f"{mag}*{body}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def is_prime(n: int) -> bool:
    return bool(isprime(n))


def primes_between(lo: int, hi: int) -> List[int]:
    """Primes p with lo <= p <= hi, ascending."""
    if hi < lo:
        return []
    return [int(p) for p in primerange(max(lo, 2), hi + 1)]


def kronecker(a: int, n: int) -> int:
    if n == 0:
        raise InvalidInputError("kronecker symbol undefined for n = 0")

    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1

    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5) and twos % 2 == 1:
            result = -result

    if n == 1:
        return result
    return result * int(jacobi_symbol(a % n, n))


def euler_phi(n: int) -> int:
    if n < 1:
        raise InvalidInputError(f"euler_phi needs n >= 1, got {n}")
    return int(totient(n))


def cyclotomic_poly(n: int) -> IntPolynomial:
    if n < 1:
        raise InvalidInputError(f"cyclotomic_poly needs n >= 1, got {n}")
    coeffs = Poly(sympy_cyclotomic_poly(n, _T), _T).all_coeffs()
    return IntPolynomial(tuple(int(c) for c in reversed(coeffs)))


def factorize(n: int) -> List[Tuple[int, int]]:
    if n < 1:
        raise InvalidInputError(f"factorize needs n >= 1, got {n}")
    return sorted((int(q), int(e)) for q, e in factorint(n).items())


def norm_class_signature(q: Rational) -> Tuple[int, Tuple[int, ...]]:
    """Representative of q in Q^x modulo norms from Q(i)^x.

    The sign of q together with the primes = 3 (mod 4) that divide q to an
    odd power.
    """
    q = Fraction(q)
    if q == 0:
        raise InvalidInputError("zero has no norm class")

    exponents = {}
    for prime, e in factorint(abs(q.numerator)).items():
        exponents[prime] = exponents.get(prime, 0) + e
    for prime, e in factorint(q.denominator).items():
        exponents[prime] = exponents.get(prime, 0) - e

    odd = tuple(sorted(int(prime) for prime, e in exponents.items() if prime % 4 == 3 and e % 2))
    return (1 if q > 0 else -1, odd)


def is_sum_of_two_rational_squares(q: Rational) -> bool:
    return norm_class_signature(q) == (1, ())


def _valuation(n: int, prime: int) -> Tuple[int, int]:
    v = 0
    while n % prime == 0:
        n //= prime
        v += 1
    return v, n


def _square_class_integer(q: Rational) -> int:
    q = Fraction(q)
    if q == 0:
        raise InvalidInputError("hilbert symbol needs nonzero arguments")
    # n/d and n*d differ by the square d^2
    return q.numerator * q.denominator


def hilbert_symbol(a: Rational, b: Rational, v: int) -> int:
    """Local Hilbert symbol (a, b)_v; v = 0 stands for the real place."""
    a = _square_class_integer(a)
    b = _square_class_integer(b)

    if v == 0:
        return -1 if a < 0 and b < 0 else 1
    if not is_prime(v):
        raise InvalidInputError(f"{v} is not a place of Q")

    alpha, u = _valuation(a, v)
    beta, w = _valuation(b, v)

    if v == 2:
        def eps(x: int) -> int:
            return ((x - 1) // 2) % 2

        def omega(x: int) -> int:
            return ((x * x - 1) // 8) % 2

        e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
        return -1 if e % 2 else 1

    sign = -1 if (alpha * beta * ((v - 1) // 2)) % 2 else 1
    value = sign
    if beta % 2:
        value *= kronecker(u, v)
    if alpha % 2:
        value *= kronecker(w, v)
    return value


def legendre_pair(p: int) -> Tuple[int, int]:
    """The symbols ((-3/p), (-4/p)) that drive every closed form."""
    return kronecker(-3, p), kronecker(-4, p)
