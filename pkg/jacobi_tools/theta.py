# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

"""Theta decomposition phi = sum_{mu mod 2m} h_mu theta_{m,mu}.

On level one the stored orbit keys (D, rho) already are the component data:
h_mu collects c_mu(D) = c((mu**2 - D) / 4m, mu) for D = mu**2 mod 4m.
"""

import json
from dataclasses import dataclass, field

from .exactarith import as_rational, format_rational
from .exceptions import ArgumentError, ConsistencyError, TruncationError
from .jacobiexp import ZERO, JacobiExpansion


@dataclass
class ThetaComponents:
    index: int
    bound: int
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        for mu in range(2 * self.index):
            self.components.setdefault(mu, [])

    def coefficient(self, mu, D):
        """c_mu(D); 0 for entries absent within the bound."""
        if -D > self.bound:
            raise TruncationError(D, self.bound)
        for key, value in self.components[mu % (2 * self.index)]:
            if key == D:
                return value
        return ZERO

    def to_document(self):
        return {
            "m": self.index,
            "bound": self.bound,
            "components": {
                str(mu): [[D, format_rational(value)] for D, value in entries]
                for mu, entries in sorted(self.components.items())
            },
        }

    @classmethod
    def from_document(cls, document):
        try:
            components = {
                int(mu): [(int(D), as_rational(value)) for D, value in entries]
                for mu, entries in document["components"].items()
            }
            return cls(document["m"], document["bound"], components)
        except (KeyError, TypeError, AttributeError) as exc:
            raise ConsistencyError("malformed theta document: {}".format(exc))


def decompose(phi):
    if phi.level != 1:
        raise ArgumentError("theta decomposition is implemented on level one only")
    tc = ThetaComponents(phi.index, phi.bound)
    for (D, rho), value in phi.items():
        tc.components[rho].append((D, value))
    return tc


def reconstruct(tc, signature):
    if signature.index != tc.index or signature.level != 1:
        raise ArgumentError(
            "signature {!r} does not match index {} on level one".format(
                signature, tc.index
            )
        )
    phi = JacobiExpansion(signature, tc.bound)
    for mu, entries in tc.components.items():
        if not 0 <= mu < 2 * tc.index:
            raise ConsistencyError("component {} is not a residue mod 2m".format(mu))
        for D, value in entries:
            phi.set_at(D, mu, value)
    return phi.seal()


def dump_json(tc, stream):
    json.dump(tc.to_document(), stream, indent=2, sort_keys=True)
    stream.write("\n")


def load_json(stream):
    try:
        document = json.load(stream)
    except ValueError as exc:
        raise ConsistencyError("not a JSON document: {}".format(exc))
    return ThetaComponents.from_document(document)
