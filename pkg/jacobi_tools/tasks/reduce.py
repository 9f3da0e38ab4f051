# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

from invoke import task

from ..indivisibility import hecke_relation_check, reduce_to_fundamental
from .common import (
    EXIT_NEGATIVE,
    as_int,
    config,
    exit_msg,
    read_expansion,
    usage_errors,
)


@task(default=True)
def descend(ctx, input, n, r):
    """Reduce (n, r) to a fundamental discriminant: prints (n0, r0, f=f)"""
    config()
    with usage_errors():
        phi = read_expansion(input)
        n0, r0, f = reduce_to_fundamental(phi, as_int(n, "n"), as_int(r, "r"))
    print("({}, {}, f={})".format(n0, r0, f))


@task(iterable=["f"], help={"f": "Square factor f to check, repeatable"})
def relation(ctx, input, ell, n, r, f=None):
    """Check nu_ell(c(f^2 n, f r)) >= nu_ell(c(n, r)) for each -f"""
    config()
    factors = [as_int(value, "f") for value in f or ()]
    with usage_errors():
        phi = read_expansion(input)
        report = hecke_relation_check(
            phi, as_int(ell, "ell"), as_int(n, "n"), as_int(r, "r"), factors
        )
    for entry in report.entries:
        print(
            "f={}: {} >= {} {}".format(
                entry.f, entry.lhs, entry.rhs, "ok" if entry.passed else "FAILED"
            )
        )
    if not report.passed:
        exit_msg("valuation relation violated", EXIT_NEGATIVE)
