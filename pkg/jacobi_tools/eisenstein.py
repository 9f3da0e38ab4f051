# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

"""Jacobi Eisenstein series E_{k,1} and E_{k,m} = E_{k,1}|V_m.

The coefficients of E_{k,1} are normalized L-values,

    e_{k,1}(n, r) = L_D(2 - k) / zeta(3 - 2k)    for D = r**2 - 4n < 0,

and every singular coefficient (D = 0) equals 1: for index one all pairs
with r**2 = 4n lie in the orbit of (0, 0).
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache

from .exactarith import prime_divisors
from .exceptions import ArgumentError, ConsistencyError
from .jacobiexp import FormSignature, JacobiExpansion, orbit_keys, scale
from .lvalues import l_value, satisfies_carlitz, zeta_negative
from .operators import v_m

_logger = logging.getLogger(__name__)


def _check_weight(k):
    if not isinstance(k, int) or k < 4 or k % 2:
        raise ArgumentError("weight must be an even integer >= 4, got {!r}".format(k))


@lru_cache(maxsize=32)
def eisenstein_k1(k, bound):
    """E_{k,1} on all orbits with |D| <= bound (sealed, shared between callers)."""
    _check_weight(k)
    if not isinstance(bound, int) or bound < 0:
        raise ArgumentError("bound must be a non-negative integer")
    zeta = zeta_negative(3 - 2 * k)
    phi = JacobiExpansion(FormSignature(k, 1), bound)
    for D, rho in orbit_keys(1, 1, bound):
        if D == 0:
            phi.set_at(D, rho, 1)
        else:
            phi.set_at(D, rho, l_value(D, 2 - k) / zeta)
    _logger.debug("built E_%s,1 with %s coefficients", k, bound)
    return phi.seal()


def eisenstein_km(k, m, bound):
    """E_{k,m} = E_{k,1}|V_m; V_m keeps the bound in D-coordinates."""
    if not isinstance(m, int) or m < 1:
        raise ArgumentError("index must be a positive integer, got {!r}".format(m))
    base = eisenstein_k1(k, bound)
    if m == 1:
        return base
    return v_m(base, m)


def _strip_prime(n, ell):
    while n % ell == 0:
        n //= ell
    return n


def integral_normalization(phi, ell_exclusions=(), carlitz_weight=None):
    """Clear the denominators of ``phi`` within its bound.

    :param ell_exclusions: primes whose denominators are left in place
    :param carlitz_weight: when ``phi`` is zeta(3 - 2k) E_{k,1}, pass k to
        assert every prime of the scalar satisfies (ell - 1) | 2(k - 1)
    :returns: ``(scalar * phi, scalar)``
    """
    scalar = math.lcm(1, *(value.denominator for _, value in phi.items()))
    for ell in ell_exclusions:
        scalar = _strip_prime(scalar, ell)
    if carlitz_weight is not None and scalar > 1:
        bad = [
            ell
            for ell in prime_divisors(scalar)
            if not satisfies_carlitz(ell, carlitz_weight)
        ]
        if bad:
            raise ConsistencyError(
                "denominator primes {} violate (l - 1) | 2(k - 1) for k = {}".format(
                    bad, carlitz_weight
                )
            )
    scalar = Fraction(scalar)
    return scale(phi, scalar), scalar
