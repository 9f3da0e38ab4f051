# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

"""Exact rational arithmetic and elementary number theory.

Every coefficient, L-value and Bernoulli number handled by jacobi_tools is an
``ExactRational`` (a :class:`fractions.Fraction`). Primality and integer
factorization are delegated to sympy (trial division, Pollard rho and p-1),
and are restricted to integers below 2**64.
"""

import math
from fractions import Fraction
from functools import lru_cache

import sympy

from .exceptions import ArgumentError

ExactRational = Fraction

# nu_ell of zero
INFINITY = math.inf

FACTOR_LIMIT = 2**64


def as_rational(value):
    """Coerce an int, a Fraction or a ``"num/den"`` string to ExactRational."""
    if isinstance(value, float):
        raise ArgumentError("floating point value {!r} is not exact".format(value))
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ArgumentError("not an exact rational: {!r} ({})".format(value, exc))


def format_rational(value):
    """Render ``value`` as ``"num/den"`` in lowest terms, always with a slash."""
    value = Fraction(value)
    return "{}/{}".format(value.numerator, value.denominator)


def is_prime(n):
    return n > 1 and bool(sympy.isprime(n))


def primes_up_to(limit):
    """All primes p <= limit, ascending."""
    return list(sympy.primerange(2, limit + 1))


def factorize(n):
    """Prime factorization of a nonzero word-sized integer as ``{p: e}``.

    The sign is dropped; ``factorize(1) == {}``.
    """
    n = abs(int(n))
    if n == 0:
        raise ArgumentError("cannot factor 0")
    if n >= FACTOR_LIMIT:
        raise ArgumentError("{} exceeds the 64-bit factorization limit".format(n))
    return {int(p): int(e) for p, e in sympy.factorint(n).items()}


def prime_divisors(n):
    return sorted(factorize(n))


def divisors(n):
    """Positive divisors of n >= 1, ascending."""
    if n < 1:
        raise ArgumentError("divisors are defined for n >= 1, got {}".format(n))
    return [int(d) for d in sympy.divisors(n)]


def moebius(n):
    if n < 1:
        raise ArgumentError("moebius is defined for n >= 1, got {}".format(n))
    exponents = factorize(n).values()
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(exponents) % 2 else 1


def sigma_power(t, n):
    """Divisor power sum sum_{d | n} d**t."""
    if n < 1:
        raise ArgumentError("sigma is defined for n >= 1, got {}".format(n))
    if t < 0:
        raise ArgumentError("negative exponent {} is not supported".format(t))
    return int(sympy.divisor_sigma(n, t))


def nu_ell(x, ell):
    """ell-adic valuation of a rational number, INFINITY for 0."""
    if not is_prime(ell):
        raise ArgumentError("{} is not a prime".format(ell))
    x = Fraction(x)
    if x == 0:
        return INFINITY
    valuation = 0
    if x.numerator % ell == 0:
        valuation += int(sympy.multiplicity(ell, abs(x.numerator)))
    if x.denominator % ell == 0:
        valuation -= int(sympy.multiplicity(ell, x.denominator))
    return valuation


def kronecker(D, n):
    """Kronecker symbol (D/n) for arbitrary integers D and n.

    (D/2) follows the D mod 8 rule, (D/-1) is the sign of D and (D/0) is 1
    exactly when |D| = 1.
    """
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if D % 2 == 0:
            return 0
        if twos % 2 and D % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * int(sympy.jacobi_symbol(D % n, n))


@lru_cache(maxsize=None)
def bernoulli(n):
    """n-th Bernoulli number with the convention B_1 = -1/2.

    The generalized Bernoulli numbers of :mod:`jacobi_tools.lvalues` are built on
    this convention (B_1(x) = x - 1/2). Computed from sum_j C(n+1, j) B_j = 0.
    """
    if n < 0:
        raise ArgumentError("Bernoulli index must be >= 0, got {}".format(n))
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    total = sum(math.comb(n + 1, j) * bernoulli(j) for j in range(n))
    return -total / (n + 1)


def bernoulli_polynomial(n, x):
    """B_n(x) = sum_j C(n, j) B_j x**(n - j), evaluated exactly."""
    x = Fraction(x)
    return sum(math.comb(n, j) * bernoulli(j) * x ** (n - j) for j in range(n + 1))


def is_discriminant(D):
    return D % 4 in (0, 1)


def squarefree_decompose(n):
    """Write a nonzero integer as n = f**2 * d with d squarefree (sign kept in d)."""
    f, d = 1, -1 if n < 0 else 1
    for p, e in factorize(n).items():
        f *= p ** (e // 2)
        d *= p ** (e % 2)
    return f, d


def fundamental_decompose(D):
    """Split a negative discriminant as D = f**2 * D0 with D0 fundamental.

    :returns: the pair ``(D0, f)``
    """
    if D >= 0 or not is_discriminant(D):
        raise ArgumentError("{} is not a negative discriminant".format(D))
    f, d = squarefree_decompose(D)
    if d % 4 == 1:
        return d, f
    # d = 2, 3 mod 4 forces f even
    return 4 * d, f // 2


def is_fundamental(D):
    """True for fundamental discriminants (1 counts, 0 does not)."""
    if D == 0 or not is_discriminant(D):
        return False
    if D % 4 == 1:
        return squarefree_decompose(D)[0] == 1
    d = D // 4
    return d % 4 in (2, 3) and squarefree_decompose(d)[0] == 1
