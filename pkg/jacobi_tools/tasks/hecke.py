# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

from invoke import task

from ..exactarith import format_rational
from ..operators import detect_eigenvalue, hecke_tp
from .common import (
    EXIT_NEGATIVE,
    as_int,
    config,
    exit_msg,
    read_expansion,
    usage_errors,
    write_expansion,
)


@task(
    default=True,
    help={
        "verify_eigen": "Certify that the input is a T_p eigenform instead "
        "of writing its image",
        "naive": "Sum over all lambda instead of the reduced formula",
    },
)
def apply(ctx, input, p, verify_eigen=False, out=None, format="json", naive=False):
    """Apply the Hecke operator T_p to an expansion file.

    With --verify-eigen nothing is written: the eigenvalue is certified on
    the largest checkable range, or the command exits with code 1.
    """
    config()
    p = as_int(p, "p")
    with usage_errors():
        phi = read_expansion(input)
        if verify_eigen:
            report = detect_eigenvalue(phi, p)
        else:
            write_expansion(hecke_tp(phi, p, naive=naive), out, format)
            return
    if not report.is_eigen:
        exit_msg(
            "not an eigenform of T_{} on |D|<={}".format(p, report.certified_bound),
            EXIT_NEGATIVE,
        )
    print(
        "eigenvalue {} certified |D|<={}".format(
            _integral_or_fraction(report.eigenvalue), report.certified_bound
        )
    )


def _integral_or_fraction(value):
    if value.denominator == 1:
        return str(value.numerator)
    return format_rational(value)
