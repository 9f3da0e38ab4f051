# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

from invoke import task

from ..indivisibility import STATUS_HITS, LocalConditions, scan
from .common import (
    EXIT_NEGATIVE,
    EXIT_USAGE,
    as_int,
    config,
    exit_msg,
    output_stream,
    read_expansion,
    usage_errors,
)


@task(
    default=True,
    iterable=["cond"],
    help={
        "cond": "Local condition p:eps with eps in {1, -1}, repeatable",
        "threads": "Worker processes, 0 = one per CPU (default from config)",
        "checkpoint": "JSON file to resume from and save progress to",
    },
)
def run(
    ctx,
    input,
    ell,
    bound=None,
    cond=None,
    out=None,
    format="json",
    threads=None,
    checkpoint=None,
):
    """Scan fundamental discriminants for coefficients prime to ell.

    Local conditions are given as repeated ``--cond p:eps`` flags. Exits with
    code 1 when no hit was found.
    """
    settings = config()
    ell = as_int(ell, "ell")
    if threads is None:
        threads = settings["threads"]
    threads = as_int(threads, "threads")
    if format not in ("json", "csv"):
        exit_msg("--format must be json or csv, got {!r}".format(format), EXIT_USAGE)
    with usage_errors():
        phi = read_expansion(input)
        bound = as_int(
            bound if bound is not None else min(settings["bound"], phi.bound), "bound"
        )
        report = scan(
            phi,
            ell,
            conditions=LocalConditions.parse(cond),
            bound=bound,
            eigen_primes=settings["eigen_primes"],
            workers=threads,
            checkpoint=checkpoint,
            checkpoint_every=settings["checkpoint_every"],
        )
        with output_stream(out) as stream:
            if format == "csv":
                report.write_csv(stream)
            else:
                report.dump_json(stream)
    if out:
        print(
            "ell={} |D|<={}: {} hits out of {} examined ({})".format(
                ell, bound, len(report.hits), report.examined, report.status
            )
        )
    if report.status != STATUS_HITS:
        exit_msg(
            "no hits for ell={} ({}, {})".format(
                ell, report.status, report.exclusion or "no exclusion"
            ),
            EXIT_NEGATIVE,
        )
