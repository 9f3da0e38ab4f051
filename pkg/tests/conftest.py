import random
from fractions import Fraction

import pytest
import sympy

from jacobi_tools.eisenstein import eisenstein_k1
from jacobi_tools.jacobiexp import FormSignature, JacobiExpansion, orbit_keys

# 48 * 11**2: T_p certification on |D| <= 48 for p <= 11
CERT_BOUND = 5808


@pytest.fixture(scope="session")
def e41():
    return eisenstein_k1(4, CERT_BOUND)


@pytest.fixture(scope="session")
def e61():
    return eisenstein_k1(6, CERT_BOUND)


@pytest.fixture(scope="session")
def e41_small():
    return eisenstein_k1(4, 500)


@pytest.fixture
def rng():
    return random.Random(20240517)


@pytest.fixture
def random_expansion():
    """Factory for sealed expansions with random small rational coefficients."""

    def factory(rng, k, m, N=1, bound=12, density=0.7):
        phi = JacobiExpansion(FormSignature(k, m, N), bound)
        for D, rho in orbit_keys(m, N, bound):
            if rng.random() < density:
                value = Fraction(rng.randint(-50, 50), rng.randint(1, 6))
                phi.set_at(D, rho, value)
        return phi.seal()

    return factory


def brute_legendre(a, p):
    """(a / p) for an odd prime p by listing the squares mod p."""
    a %= p
    if a == 0:
        return 0
    return 1 if a in {x * x % p for x in range(1, p)} else -1


def oracle_bernoulli(n):
    """n-th Bernoulli number read off the series of t / (e**t - 1)."""
    t = sympy.Symbol("t")
    series = sympy.series(t / (sympy.exp(t) - 1), t, 0, n + 1).removeO()
    value = series.coeff(t, n) * sympy.factorial(n)
    return Fraction(int(value.p), int(value.q))


def oracle_character(D, a):
    """Kronecker (D / a) for a >= 1 from sympy's Jacobi symbol."""
    result = 1
    while a % 2 == 0:
        a //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    if a == 1:
        return result
    return result * sympy.jacobi_symbol(D % a, a)


def oracle_gen_bernoulli(n, D):
    """f**(n-1) sum_a chi(a) B_n(a/f) with sympy's Bernoulli polynomials."""
    f = abs(D)
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.bernoulli(n, x), x)
    total = sum(
        oracle_character(D, a) * poly.eval(sympy.Rational(a, f))
        for a in range(1, f + 1)
    )
    value = sympy.Rational(f) ** (n - 1) * total
    return Fraction(int(value.p), int(value.q))


def oracle_e41_fundamental(D):
    """e_{4,1} at a fundamental discriminant D < 0.

    e = L_D(-2) / zeta(-5) = 84 B_{3,chi_D}, B_{3,chi} = f**2 sum chi(a) B_3(a/f)
    with B_3(x) = x**3 - 3x**2/2 + x/2.
    """
    f = abs(D)
    s1 = s2 = s3 = 0
    for a in range(1, f + 1):
        c = oracle_character(D, a)
        if c:
            s1 += c * a
            s2 += c * a * a
            s3 += c * a * a * a
    b3 = Fraction(2 * s3 - 3 * f * s2 + f * f * s1, 2 * f)
    return 84 * b3


def brute_is_fundamental(D):
    def squarefree(n):
        n = abs(n)
        k = 2
        while k * k <= n:
            if n % (k * k) == 0:
                return False
            k += 1
        return True

    if D % 4 == 1:
        return squarefree(D)
    if D % 4 == 0:
        return (D // 4) % 4 in (2, 3) and squarefree(D // 4)
    return False
