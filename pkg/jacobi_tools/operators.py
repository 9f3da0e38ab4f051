# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

"""Coefficient-level operators on Jacobi expansions.

All operators take a sealed :class:`~jacobi_tools.jacobiexp.JacobiExpansion`
and return a new sealed one whose bound only covers coefficients they can
actually compute:

========  =============================================  ===============
operator  coefficient of the image at (n, r)              output bound
========  =============================================  ===============
T_p       three-term Hecke formula                        bound // p**2
U_d       c(n, r/d) if d | r else 0                       bound * d**2
V_l       sum_{a | (n,r,l)} a**(k-1) c(nl/a**2, r/a)      bound
B_p       c(n, r) if p | D else 0                         bound
twist     (D/p) c(n, r)                                   bound
========  =============================================  ===============
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactarith import divisors, is_prime, kronecker
from .exceptions import ArgumentError, ConsistencyError, TruncationError
from .jacobiexp import ZERO, FormSignature, JacobiExpansion, orbit_keys

_logger = logging.getLogger(__name__)

NOT_EIGEN = None


@dataclass(frozen=True)
class HeckeEigenReport:
    prime: int
    eigenvalue: Optional[Fraction]
    certified_bound: int

    @property
    def is_eigen(self):
        return self.eigenvalue is not NOT_EIGEN


def _require_sealed(phi):
    if not phi.sealed:
        raise ConsistencyError("operators only act on sealed expansions")


def _require_prime(p):
    if not is_prime(p):
        raise ArgumentError("{} is not a prime".format(p))


def hecke_case_factor(p, n, r, m):
    """C_p(n, r, m) of the Hecke coefficient formula."""
    if m % p:
        return p * kronecker(r * r - 4 * m * n, p)
    if r % p:
        return 0
    if n % p:
        return -p
    return p * (p - 1)


def _lambda_sum(phi, n, r, p, naive=False):
    """sum_{lam mod p} c((n + rN lam + mN**2 lam**2)/p**2, (r + 2mN lam)/p).

    Terms with a non-integral argument vanish. When p does not divide 2mN only
    the lam solving r + 2mN lam = 0 mod p can contribute.
    """
    m, N = phi.index, phi.level
    step = 2 * m * N
    if naive or step % p == 0:
        lambdas = range(p)
    else:
        lambdas = ((-r * pow(step, -1, p)) % p,)
    total = ZERO
    for lam in lambdas:
        top = n + r * N * lam + m * N * N * lam * lam
        shifted = r + step * lam
        if top % (p * p) or shifted % p:
            continue
        total += phi.coeff(top // (p * p), shifted // p)
    return total


def hecke_tp(phi, p, bound=None, naive=False):
    """Image of ``phi`` under the Hecke operator T_p.

    c*(n, r) = c(p**2 n, p r) + chi(p) C_p(n, r, m) p**(k-3) c(n, r)
               + chi(p**2) p**(2k-3) sum_{lam mod p} c(...)

    :param bound: certified bound wanted for the image, at most bound // p**2
    :param naive: evaluate the lambda sum over all p residues
    """
    _require_sealed(phi)
    _require_prime(p)
    sig = phi.signature
    if math.gcd(p, sig.group_level) != 1:
        raise ArgumentError(
            "T_{} needs p prime to the group level {}".format(p, sig.group_level)
        )
    largest = phi.bound // (p * p)
    if bound is None:
        bound = largest
    elif bound > largest:
        raise TruncationError(-bound * p * p, phi.bound)
    k, m = sig.weight, sig.index
    chi_p = sig.chi(p)
    middle = Fraction(p) ** (k - 3)
    last = Fraction(p) ** (2 * k - 3)
    image = JacobiExpansion(sig, bound)
    for D, rho in orbit_keys(m, sig.level, bound):
        n = (rho * rho - D) // (4 * m)
        value = phi.coeff(p * p * n, p * rho)
        if chi_p:
            c = phi.coeff(n, rho)
            if c:
                value += chi_p * hecke_case_factor(p, n, rho, m) * middle * c
            value += last * _lambda_sum(phi, n, rho, p, naive=naive)
        if value:
            image.set_at(D, rho, value)
    return image.seal()


def u_d(phi, d):
    """phi(tau, d z): index m d**2, c'(n, r) = c(n, r/d) when d | r."""
    _require_sealed(phi)
    if not isinstance(d, int) or d < 1:
        raise ArgumentError("d must be a positive integer")
    sig = phi.signature
    signature = FormSignature(
        sig.weight, sig.index * d * d, sig.level, sig.character, sig.group_level
    )
    image = JacobiExpansion(signature, phi.bound * d * d)
    modulus = sig.orbit_modulus
    for (D, rho), value in phi.items():
        # rho mod 2mN splits into d residues mod 2mN d
        for j in range(d):
            image.set_at(d * d * D, d * (rho + modulus * j), value)
    return image.seal()


def v_m(phi, l):
    """Index raising V_l: J_{k,m} -> J_{k,ml} on level-one forms.

    c'(n, r) = sum_{a | (n, r, l)} a**(k-1) c(n l / a**2, r / a)
    """
    _require_sealed(phi)
    if not isinstance(l, int) or l < 1:
        raise ArgumentError("l must be a positive integer")
    sig = phi.signature
    if sig.level != 1 or sig.group_level != 1:
        raise ArgumentError("V_l is only implemented on level one")
    k, m = sig.weight, sig.index
    image = JacobiExpansion(FormSignature(k, m * l), phi.bound)
    for D, rho in orbit_keys(m * l, 1, phi.bound):
        n = (rho * rho - D) // (4 * m * l)
        total = ZERO
        for a in divisors(math.gcd(n, rho, l)):
            total += a ** (k - 1) * phi.coeff(n * l // (a * a), rho // a)
        if total:
            image.set_at(D, rho, total)
    return image.seal()


def project_bp(phi, p):
    """B_p keeps the coefficients with p | D.

    The group level grows by p**2, or by p when p divides the index.
    """
    _require_sealed(phi)
    if not isinstance(p, int) or p < 1:
        raise ArgumentError("p must be a positive integer")
    sig = phi.signature
    factor = p if sig.index % p == 0 else p * p
    signature = sig.with_group_level(sig.group_level * factor)
    return phi.map_values(
        lambda key, value: value if key[0] % p == 0 else ZERO, signature=signature
    )


def twist(phi, p):
    """Quadratic twist by psi = (./p): c(n, r) -> (D/p) c(n, r)."""
    _require_sealed(phi)
    _require_prime(p)
    sig = phi.signature
    if p == 2 or math.gcd(p, 2 * sig.index * sig.level) != 1:
        raise ArgumentError("twist needs an odd prime p coprime to 2mN")
    signature = sig.with_group_level(sig.group_level * p * p)
    return phi.map_values(
        lambda key, value: kronecker(key[0], p) * value, signature=signature
    )


def detect_eigenvalue(phi, p, bound=None):
    """Certify phi | T_p = lambda phi on the largest checkable range.

    The candidate eigenvalue is read off the first nonzero coefficient; the
    report carries ``eigenvalue=NOT_EIGEN`` if any key disagrees.
    """
    image = hecke_tp(phi, p, bound=bound)
    if bound is None and image.bound == 0:
        # only D = 0 would be checked
        raise TruncationError(-p * p, phi.bound)
    source = phi.restrict(image.bound)
    if source.is_zero():
        raise ArgumentError(
            "form vanishes on |D| <= {}, nothing to certify".format(image.bound)
        )
    first, value = source.items()[0]
    eigenvalue = image.coeff_at(*first) / value
    for key in set(source.keys()) | set(image.keys()):
        if image.coeff_at(*key) != eigenvalue * source.coeff_at(*key):
            _logger.info("T_%s image disagrees at %s", p, key)
            return HeckeEigenReport(p, NOT_EIGEN, image.bound)
    return HeckeEigenReport(p, eigenvalue, image.bound)
