# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

"""Special values of quadratic Dirichlet L-series at non-positive integers.

L-values come from generalized Bernoulli numbers,

    L(1 - n, chi) = -B_{n,chi} / n,
    B_{n,chi} = f**(n-1) * sum_{a=1..f} chi(a) B_n(a/f),

with f the modulus of chi. Expanding B_n(a/f) binomially turns the sum into
integer power sums sum_a chi(a) a**e, which is how :func:`gen_bernoulli`
evaluates it; the literal Bernoulli-polynomial sum stays available as a
cross-check.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exactarith import (
    bernoulli,
    bernoulli_polynomial,
    divisors,
    fundamental_decompose,
    is_discriminant,
    is_fundamental,
    is_prime,
    kronecker,
    moebius,
    primes_up_to,
    sigma_power,
)
from .exceptions import ArgumentError


@dataclass(frozen=True)
class QuadCharacter:
    """The real character chi_D = (D / .) attached to a discriminant D."""

    discriminant: int

    def __post_init__(self):
        D = self.discriminant
        if D == 0 or not is_discriminant(D):
            raise ArgumentError("{} is not a nonzero discriminant".format(D))

    @property
    def modulus(self):
        return abs(self.discriminant)

    @property
    def is_trivial(self):
        return self.discriminant == 1

    @property
    def parity(self):
        """chi(-1), the sign of the discriminant."""
        return 1 if self.discriminant > 0 else -1

    def __call__(self, a):
        return kronecker(self.discriminant, a)

    def values(self):
        """[chi(0), chi(1), ..., chi(f)] computed multiplicatively.

        Only primes are evaluated through the Kronecker symbol; composites are
        filled in by a linear sieve.
        """
        D, f = self.discriminant, self.modulus
        table = [0] * (f + 1)
        table[0] = self(0)
        table[1] = 1
        lowest = [0] * (f + 1)
        primes = []
        for a in range(2, f + 1):
            if not lowest[a]:
                lowest[a] = a
                primes.append(a)
                if a == 2:
                    table[a] = kronecker(D, 2)
                else:
                    # Euler's criterion
                    euler = pow(D % a, (a - 1) // 2, a)
                    table[a] = -1 if euler == a - 1 else euler
            for p in primes:
                if p > lowest[a] or a * p > f:
                    break
                lowest[a * p] = p
                table[a * p] = table[a] * table[p]
        return table


def _check_character(chi):
    if isinstance(chi, int):
        return QuadCharacter(chi)
    return chi


@lru_cache(maxsize=None)
def _gen_bernoulli_powersum(n, D):
    chi = QuadCharacter(D)
    f = chi.modulus
    table = chi.values()
    sums = [0] * (n + 1)
    for a in range(1, f + 1):
        value = table[a]
        if not value:
            continue
        term = value
        for e in range(n + 1):
            sums[e] += term
            term *= a
    return sum(
        comb(n, j) * bernoulli(j) * Fraction(f) ** (j - 1) * sums[n - j]
        for j in range(n + 1)
    )


def _gen_bernoulli_polynomial(n, chi):
    f = chi.modulus
    total = sum(
        chi(a) * bernoulli_polynomial(n, Fraction(a, f)) for a in range(1, f + 1)
    )
    return Fraction(f) ** (n - 1) * total


def gen_bernoulli(n, chi, method="powersum"):
    """Generalized Bernoulli number B_{n,chi}.

    :param n: index, n >= 1
    :param chi: a :class:`QuadCharacter` or its discriminant
    :param method: ``"powersum"`` (default, memoized) or ``"polynomial"``, the
        literal sum of Bernoulli polynomials
    """
    chi = _check_character(chi)
    if n < 1:
        raise ArgumentError("generalized Bernoulli index must be >= 1")
    if chi.modulus > 1 and chi.parity != (-1) ** n:
        return Fraction(0)
    if method == "powersum":
        return _gen_bernoulli_powersum(n, chi.discriminant)
    if method == "polynomial":
        return _gen_bernoulli_polynomial(n, chi)
    raise ArgumentError("unknown method {!r}".format(method))


def _weight_from_argument(s):
    if not isinstance(s, int) or s > 0:
        raise ArgumentError("s must be a non-positive integer, got {!r}".format(s))
    return 2 - s


def zeta_negative(s):
    """zeta(1 - 2n) = -B_{2n} / (2n) for s = 1 - 2n, n >= 1."""
    if not isinstance(s, int) or s >= 0 or s % 2 == 0:
        raise ArgumentError("s must be a negative odd integer, got {!r}".format(s))
    n = (1 - s) // 2
    return -bernoulli(2 * n) / (2 * n)


def l_value_fundamental(D0, s):
    """L_{D0}(s) = -B_{k-1,chi_D0} / (k - 1) for s = 2 - k."""
    if not is_fundamental(D0):
        raise ArgumentError("{} is not a fundamental discriminant".format(D0))
    k = _weight_from_argument(s)
    return -gen_bernoulli(k - 1, QuadCharacter(D0)) / (k - 1)


def l_value(D, s):
    """L_D(s) for a negative discriminant D = f**2 D0 and s = 2 - k.

    L_D(s) = L_{D0}(s) sum_{d | f} mu(d) (D0/d) d**(-s) sigma_{1-2s}(f/d)
    """
    D0, f = fundamental_decompose(D)
    base = l_value_fundamental(D0, s)
    if f == 1:
        return base
    correction = 0
    for d in divisors(f):
        mu = moebius(d)
        if mu:
            correction += mu * kronecker(D0, d) * d ** (-s) * sigma_power(
                1 - 2 * s, f // d
            )
    return base * correction


def satisfies_carlitz(ell, k):
    """True when (ell - 1) divides 2(k - 1)."""
    return is_prime(ell) and (2 * (k - 1)) % (ell - 1) == 0


def carlitz_primes(k):
    """The primes allowed in denominators of L_D(2 - k), ascending."""
    return [ell for ell in primes_up_to(2 * k - 1) if satisfies_carlitz(ell, k)]
