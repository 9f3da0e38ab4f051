# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

from invoke import task

from ..eisenstein import eisenstein_km
from .common import (
    EXIT_USAGE,
    as_int,
    config,
    exit_msg,
    usage_errors,
    write_expansion,
)


@task(default=True)
def build(ctx, k, m=1, bound=None, out=None, format="json"):
    """Write the Jacobi Eisenstein series E_{k,m} truncated at |D| <= bound.

    The bound defaults to the ``bound`` configuration key.
    """
    settings = config()
    k = as_int(k, "k")
    m = as_int(m, "m")
    bound = as_int(bound if bound is not None else settings["bound"], "bound")
    if k < 4 or k % 2:
        exit_msg("-k must be an even integer >= 4, got {}".format(k), EXIT_USAGE)
    if m < 1:
        exit_msg("-m must be a positive integer, got {}".format(m), EXIT_USAGE)
    if bound < 4:
        exit_msg("--bound must be at least 4, got {}".format(bound), EXIT_USAGE)
    with usage_errors():
        phi = eisenstein_km(k, m, bound)
        write_expansion(phi, out, format)
