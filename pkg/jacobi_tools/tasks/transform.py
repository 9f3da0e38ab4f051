# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

from invoke import task

from ..operators import project_bp, twist as twist_form, u_d, v_m
from .common import as_int, config, read_expansion, usage_errors, write_expansion


def _transform(operator, input, argument, out, format):
    config()
    with usage_errors():
        phi = read_expansion(input)
        write_expansion(operator(phi, argument), out, format)


@task
def twist(ctx, input, p, out=None, format="json"):
    """Quadratic twist by (./p)"""
    _transform(twist_form, input, as_int(p, "p"), out, format)


@task
def project(ctx, input, p, out=None, format="json"):
    """Keep the coefficients with p | D (B_p)"""
    _transform(project_bp, input, as_int(p, "p"), out, format)


@task(name="raise-index")
def raise_index(ctx, input, l, out=None, format="json"):
    """Index raising V_l of a level one form"""
    _transform(v_m, input, as_int(l, "l"), out, format)


@task(name="scale-index")
def scale_index(ctx, input, d, out=None, format="json"):
    """phi(tau, d z), index m d**2 (U_d)"""
    _transform(u_d, input, as_int(d, "d"), out, format)
