# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

"""Truncated Fourier expansions of Jacobi forms.

A form of weight k and index m for Gamma_0(M) x| (NZ x Z) satisfies

    c(n, r) = c(n + r N lam + m N**2 lam**2, r + 2 m N lam)

so its coefficients only depend on the discriminant D = r**2 - 4 m n and on
r mod 2mN. Expansions are stored on those orbit keys (D, rho) and truncated
by |D| <= bound: inside the bound an absent key means 0, outside it every
access raises :class:`~jacobi_tools.exceptions.TruncationError`.

An expansion is mutable while it is being built and immutable once
:meth:`JacobiExpansion.seal` has been called; operators only accept sealed
expansions and return sealed ones.
"""

import csv
import json
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .exactarith import INFINITY, as_rational, format_rational, nu_ell
from .exceptions import (
    ArgumentError,
    ConsistencyError,
    SealedError,
    SignatureMismatch,
    TruncationError,
)
from .lvalues import QuadCharacter

ZERO = Fraction(0)


@dataclass(frozen=True)
class FormSignature:
    """Weight, index, lattice level N, group level M and character.

    The lattice is NZ x Z and fixes the orbit modulus 2mN; the group is
    Gamma_0(M), M = N**2 unless an operator raised it. ``character`` is None
    for the trivial character.
    """

    weight: int
    index: int
    level: int = 1
    character: Optional[QuadCharacter] = None
    group_level: Optional[int] = None

    def __post_init__(self):
        for name in ("weight", "index", "level"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ArgumentError("{} must be a positive integer".format(name))
        if self.group_level is None:
            object.__setattr__(self, "group_level", self.level**2)
        if self.group_level % self.level**2:
            raise ArgumentError(
                "group level {} is not a multiple of N**2 = {}".format(
                    self.group_level, self.level**2
                )
            )
        if self.character is not None and self.character.is_trivial:
            object.__setattr__(self, "character", None)
        if self.character is not None:
            if self.group_level == 1:
                raise ArgumentError("level 1 forces the trivial character")
            if self.group_level % self.character.modulus:
                raise ArgumentError(
                    "character modulus {} does not divide the group level {}".format(
                        self.character.modulus, self.group_level
                    )
                )

    @property
    def orbit_modulus(self):
        return 2 * self.index * self.level

    def chi(self, a):
        if self.character is None:
            return 1
        return self.character(a)

    def compatible(self, other):
        """Same weight, index, lattice and character (group level may differ)."""
        return (
            self.weight == other.weight
            and self.index == other.index
            and self.level == other.level
            and self.character == other.character
        )

    def with_group_level(self, group_level):
        return replace(self, group_level=group_level)

    def to_dict(self):
        return {
            "k": self.weight,
            "m": self.index,
            "N": self.level,
            "char_disc": self.character.discriminant if self.character else None,
            "group_level": self.group_level,
        }

    @classmethod
    def from_dict(cls, data):
        char_disc = data.get("char_disc")
        return cls(
            weight=data["k"],
            index=data["m"],
            level=data.get("N", 1),
            character=QuadCharacter(char_disc) if char_disc else None,
            group_level=data.get("group_level"),
        )


def orbit_keys(index, level, bound):
    """All orbit keys (D, rho) with -bound <= D <= 0, in (|D|, rho) order."""
    modulus = 2 * index * level
    squares = [(rho, rho * rho % (4 * index)) for rho in range(modulus)]
    for a in range(bound + 1):
        residue = -a % (4 * index)
        for rho, square in squares:
            if square == residue:
                yield -a, rho


class JacobiExpansion:
    """Exact coefficients c(n, r) of a Jacobi form on all orbits with |D| <= bound."""

    def __init__(self, signature, bound, coefficients=None):
        if not isinstance(bound, int) or bound < 0:
            raise ArgumentError("bound must be a non-negative integer")
        self.signature = signature
        self.bound = bound
        self._coeffs = {}
        self._sealed = False
        for (D, rho), value in (coefficients or {}).items():
            self.set_at(D, rho, value)

    def __repr__(self):
        sig = self.signature
        return "<JacobiExpansion k={} m={} N={} M={} bound={} keys={}{}>".format(
            sig.weight,
            sig.index,
            sig.level,
            sig.group_level,
            self.bound,
            len(self._coeffs),
            "" if self._sealed else " building",
        )

    @property
    def weight(self):
        return self.signature.weight

    @property
    def index(self):
        return self.signature.index

    @property
    def level(self):
        return self.signature.level

    @property
    def sealed(self):
        return self._sealed

    def seal(self):
        """Drop zero entries and freeze the expansion."""
        self._coeffs = {key: v for key, v in self._coeffs.items() if v}
        self._sealed = True
        return self

    def key(self, n, r):
        """Orbit key (D, rho) of the pair (n, r)."""
        return r * r - 4 * self.index * n, r % self.signature.orbit_modulus

    def coeff_at(self, D, rho):
        if D > 0:
            return ZERO
        if -D > self.bound:
            raise TruncationError(D, self.bound)
        return self._coeffs.get((D, rho % self.signature.orbit_modulus), ZERO)

    def coeff(self, n, r):
        """c(n, r); 0 when r**2 > 4mn, TruncationError when |D| > bound."""
        return self.coeff_at(*self.key(n, r))

    def set_at(self, D, rho, value):
        if self._sealed:
            raise SealedError("cannot modify a sealed expansion")
        value = as_rational(value)
        if D > 0:
            if value:
                raise ConsistencyError(
                    "nonzero coefficient at D = {} > 0 breaks holomorphy".format(D)
                )
            return
        if -D > self.bound:
            raise TruncationError(D, self.bound)
        index = self.index
        if (rho * rho - D) % (4 * index):
            raise ConsistencyError(
                "D = {} is not congruent to {}**2 mod {}".format(D, rho, 4 * index)
            )
        key = (D, rho % self.signature.orbit_modulus)
        current = self._coeffs.get(key)
        if current is not None and current != value:
            raise ConsistencyError(
                "orbit {} already holds {}, refusing {}".format(key, current, value)
            )
        self._coeffs[key] = value

    def set_coeff(self, n, r, value):
        """Set the whole orbit of (n, r) to ``value`` (building phase only)."""
        self.set_at(*self.key(n, r), value)

    def keys(self):
        """Stored keys with nonzero coefficients, ordered by (|D|, rho)."""
        return sorted(
            (key for key, value in self._coeffs.items() if value),
            key=lambda key: (-key[0], key[1]),
        )

    def items(self):
        return [(key, self._coeffs[key]) for key in self.keys()]

    def is_zero(self):
        return not any(self._coeffs.values())

    def restrict(self, bound):
        """The same form, certified only on |D| <= bound."""
        if bound > self.bound:
            raise TruncationError(-bound, self.bound)
        return JacobiExpansion(
            self.signature,
            bound,
            {key: v for key, v in self._coeffs.items() if -key[0] <= bound},
        ).seal()

    def map_values(self, func, signature=None, bound=None):
        """New sealed expansion with coefficient func((D, rho), value) per key."""
        bound = self.bound if bound is None else bound
        result = JacobiExpansion(signature or self.signature, bound)
        for key, value in self._coeffs.items():
            if -key[0] <= bound:
                result.set_at(key[0], key[1], func(key, value))
        return result.seal()

    def __eq__(self, other):
        if not isinstance(other, JacobiExpansion):
            return NotImplemented
        return (
            self.signature.compatible(other.signature)
            and self.bound == other.bound
            and dict(self.items()) == dict(other.items())
        )

    __hash__ = None

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return add(self, scale(other, -1))

    def __mul__(self, scalar):
        return scale(self, scalar)

    __rmul__ = __mul__


def zero_expansion(signature, bound):
    return JacobiExpansion(signature, bound).seal()


def coeff(phi, n, r):
    return phi.coeff(n, r)


def set_coeff(phi, n, r, value):
    phi.set_coeff(n, r, value)


def add(phi, psi):
    """Coefficient-wise sum on the common certified range."""
    if not phi.signature.compatible(psi.signature):
        raise SignatureMismatch(
            "cannot add {!r} and {!r}".format(phi.signature, psi.signature)
        )
    bound = min(phi.bound, psi.bound)
    group_level = math.lcm(phi.signature.group_level, psi.signature.group_level)
    total = {}
    for expansion in (phi, psi):
        for key, value in expansion.items():
            if -key[0] <= bound:
                total[key] = total.get(key, ZERO) + value
    return JacobiExpansion(
        phi.signature.with_group_level(group_level), bound, total
    ).seal()


def scale(phi, c):
    c = as_rational(c)
    return phi.map_values(lambda key, value: c * value)


def nu_ell_form(phi, ell):
    """min of nu_ell over the coefficients with |D| <= bound.

    This is the truncation of the infimum over all coefficients; it can only
    overestimate the valuation of the full form.
    """
    return min((nu_ell(value, ell) for _, value in phi.items()), default=INFINITY)


def to_document(phi):
    return {
        "signature": phi.signature.to_dict(),
        "bound": phi.bound,
        "coeffs": [[D, rho, format_rational(v)] for (D, rho), v in phi.items()],
    }


def from_document(document):
    try:
        signature = FormSignature.from_dict(document["signature"])
        phi = JacobiExpansion(signature, document["bound"])
        for D, rho, value in document["coeffs"]:
            phi.set_at(D, rho, value)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ArgumentError):
            raise
        raise ConsistencyError("malformed expansion document: {}".format(exc))
    return phi.seal()


def dump_json(phi, stream):
    json.dump(to_document(phi), stream, indent=2, sort_keys=True)
    stream.write("\n")


def load_json(stream):
    try:
        document = json.load(stream)
    except ValueError as exc:
        raise ConsistencyError("not a JSON document: {}".format(exc))
    return from_document(document)


def write_csv(phi, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["D", "rho", "numerator", "denominator"])
    for (D, rho), value in phi.items():
        writer.writerow([D, rho, value.numerator, value.denominator])
