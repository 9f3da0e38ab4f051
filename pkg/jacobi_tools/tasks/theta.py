# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

from invoke import task

from ..jacobiexp import FormSignature
from ..theta import decompose as theta_decompose
from ..theta import dump_json, load_json
from ..theta import reconstruct as theta_reconstruct
from .common import (
    as_int,
    config,
    output_stream,
    read_expansion,
    usage_errors,
    write_expansion,
)


@task(default=True)
def decompose(ctx, input, out=None):
    """Export the theta components h_mu of a level one expansion"""
    config()
    with usage_errors():
        phi = read_expansion(input)
        with output_stream(out) as stream:
            dump_json(theta_decompose(phi), stream)


@task
def reconstruct(ctx, input, k, out=None, format="json"):
    """Rebuild an expansion of weight k from exported theta components"""
    config()
    with usage_errors():
        with open(input) as f:
            tc = load_json(f)
        phi = theta_reconstruct(tc, FormSignature(as_int(k, "k"), tc.index))
        write_expansion(phi, out, format)
