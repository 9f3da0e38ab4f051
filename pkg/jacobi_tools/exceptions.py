# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

"""Errors raised by the jacobi_tools library.

Library code raises these and never exits; the task layer turns them into
exit codes.
"""


class JacobiToolsError(Exception):
    """Base class of every error raised by jacobi_tools."""


class ArgumentError(JacobiToolsError, ValueError):
    """A precondition on an argument does not hold."""


class TruncationError(JacobiToolsError, LookupError):
    """A coefficient outside the certified |D| range was requested."""

    def __init__(self, discriminant, bound):
        self.discriminant = discriminant
        self.bound = bound
        super().__init__(
            "discriminant {} lies outside the certified range |D| <= {}".format(
                discriminant, bound
            )
        )


class ConsistencyError(JacobiToolsError):
    """Data contradicts itself (orbit conflicts, broken congruences...)."""


class SignatureMismatch(ConsistencyError):
    """Two expansions do not live in the same space."""


class SealedError(ConsistencyError):
    """A sealed expansion was modified."""


class InfiniteSetError(JacobiToolsError):
    """The exceptional set A(p, lambda_p) is infinite."""
