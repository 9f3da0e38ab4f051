# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

"""Indivisibility of Fourier coefficients at fundamental discriminants.

For a Hecke eigenform phi with a seed coefficient c(n, r) prime to ell and
(D, mN) = 1, there are infinitely many fundamental D, subject to finitely many
local conditions (D / p_j) = eps_j, with nu_ell(c(n, r)) = 0, unless ell lies
in the exceptional set cut out by the eigenvalues. Nothing infinite can be
computed: :func:`scan` sweeps fundamental discriminants up to a bound and
reports the hits, together with the clause that would exclude ell.
"""

import csv
import json
import logging
import math
import os
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import List, Optional, Tuple

from .exactarith import (
    as_rational,
    factorize,
    format_rational,
    fundamental_decompose,
    is_fundamental,
    is_prime,
    kronecker,
    nu_ell,
    prime_divisors,
)
from .exceptions import (
    ArgumentError,
    ConsistencyError,
    InfiniteSetError,
    TruncationError,
)
from .operators import detect_eigenvalue

_logger = logging.getLogger(__name__)

ScanHit = namedtuple("ScanHit", "D rho coeff")
RelationEntry = namedtuple("RelationEntry", "f lhs rhs passed")
RelationReport = namedtuple("RelationReport", "passed entries")

STATUS_HITS = "hits"
STATUS_NO_HITS = "no-hits"
STATUS_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LocalConditions:
    """Prescribed signs (D / p_j) = eps_j at odd primes p_j."""

    primes: Tuple[int, ...] = ()
    signs: Tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.primes) != len(self.signs):
            raise ArgumentError("every local prime needs exactly one sign")
        if len(set(self.primes)) != len(self.primes):
            raise ArgumentError("local primes must be pairwise distinct")
        for p, eps in zip(self.primes, self.signs):
            if p == 2 or not is_prime(p):
                raise ArgumentError("local prime {} is not an odd prime".format(p))
            if eps not in (1, -1):
                raise ArgumentError("sign for {} must be +1 or -1".format(p))

    @classmethod
    def parse(cls, items):
        """Build from strings such as ``"5:1"`` or ``"7:-1"``."""
        primes, signs = [], []
        for item in items or ():
            try:
                p, eps = item.split(":")
                primes.append(int(p))
                signs.append(int(eps))
            except ValueError:
                raise ArgumentError(
                    "local condition {!r} is not of the form p:eps".format(item)
                )
        return cls(tuple(primes), tuple(signs))

    def check_coprime(self, modulus):
        for p in self.primes:
            if modulus % p == 0:
                raise ArgumentError("local prime {} divides mN = {}".format(p, modulus))

    def satisfied_by(self, D):
        return all(kronecker(D, p) == eps for p, eps in zip(self.primes, self.signs))

    def to_list(self):
        return ["{}:{}".format(p, eps) for p, eps in zip(self.primes, self.signs)]


@dataclass
class ScanReport:
    ell: int
    bound: int
    conditions: LocalConditions
    hits: List[ScanHit] = field(default_factory=list)
    examined: int = 0
    exceptional_set: Optional[List[int]] = None
    seed: Optional[Tuple[int, int]] = None
    exclusion: Optional[str] = None
    status: str = STATUS_INCONCLUSIVE

    @property
    def exceptional(self):
        return self.exceptional_set is not None and self.ell in self.exceptional_set

    def to_dict(self):
        return {
            "ell": self.ell,
            "bound": self.bound,
            "conditions": self.conditions.to_list(),
            "exceptional_set": self.exceptional_set,
            "exceptional": self.exceptional,
            "seed": list(self.seed) if self.seed else None,
            "exclusion": self.exclusion,
            "status": self.status,
            "examined": self.examined,
            "hits": [
                {"D": hit.D, "rho": hit.rho, "coeff": format_rational(hit.coeff)}
                for hit in self.hits
            ],
        }

    def dump_json(self, stream):
        json.dump(self.to_dict(), stream, indent=2, sort_keys=True)
        stream.write("\n")

    def write_csv(self, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["D", "rho", "numerator", "denominator"])
        for hit in self.hits:
            writer.writerow(
                [hit.D, hit.rho, hit.coeff.numerator, hit.coeff.denominator]
            )


def exceptional_set(p, lambda_p, k, chi_p=1):
    """Primes of lambda_p -/+ chi(p)(p**(k-1) + p**(k-2)) and p(p-1)."""
    if not is_prime(p):
        raise ArgumentError("{} is not a prime".format(p))
    try:
        integral = int(lambda_p) == lambda_p
    except (TypeError, ValueError):
        integral = False
    if not integral:
        raise ArgumentError("eigenvalue {} is not an integer".format(lambda_p))
    lambda_p = int(lambda_p)
    base = chi_p * (p ** (k - 1) + p ** (k - 2))
    primes = set(prime_divisors(p * (p - 1)))
    for eps in (1, -1):
        difference = lambda_p - eps * base
        if difference == 0:
            raise InfiniteSetError(
                "eigenvalue {} = {} (p**(k-1) + p**(k-2)) makes A({}) infinite".format(
                    lambda_p, eps * chi_p, p
                )
            )
        primes.update(prime_divisors(difference))
    return primes


def exceptional_intersection(eigenvalues, k, chi=None):
    """Intersection of A(p, lambda_p) over a ``{p: lambda_p}`` mapping."""
    if not eigenvalues:
        raise ArgumentError("no eigenvalues to intersect")
    result = None
    for p, lambda_p in sorted(eigenvalues.items()):
        chi_p = chi(p) if chi is not None else 1
        primes = exceptional_set(p, lambda_p, k, chi_p)
        result = primes if result is None else result & primes
    return result


def enumerate_fundamentals(bound, m, N=1, conditions=None, start=1):
    """Yield (D, rho) for fundamental -bound <= D <= -start in |D| order.

    Only D prime to mN satisfying the local conditions are kept, once for
    every rho mod 2m with rho**2 = D mod 4m.
    """
    conditions = conditions or LocalConditions()
    conditions.check_coprime(m * N)
    for a in range(max(start, 1), bound + 1):
        D = -a
        if math.gcd(a, m * N) != 1 or not is_fundamental(D):
            continue
        if not conditions.satisfied_by(D):
            continue
        for rho in range(2 * m):
            if (rho * rho - D) % (4 * m) == 0:
                yield D, rho


def _scan_chunk(phi, ell, conditions, low, high):
    """Hits and examined count for fundamental discriminants with low <= |D| <= high."""
    m, N = phi.index, phi.level
    hits, examined = [], 0
    for D, rho in enumerate_fundamentals(high, m, N, conditions, start=low):
        for lift in range(rho, 2 * m * N, 2 * m):
            value = phi.coeff_at(D, lift)
            examined += 1
            if nu_ell(value, ell) == 0:
                hits.append(ScanHit(D, lift, value))
    return hits, examined


def _find_seed(phi, ell):
    modulus = phi.index * phi.level
    for (D, rho), value in phi.items():
        if D < 0 and math.gcd(D, modulus) == 1 and nu_ell(value, ell) == 0:
            return D, rho
    return None


def _exceptional_region(phi, eigen_primes):
    eigenvalues = {}
    for p in eigen_primes:
        try:
            report = detect_eigenvalue(phi, p)
        except (ArgumentError, TruncationError) as exc:
            _logger.warning("skipping eigen-prime %s: %s", p, exc)
            continue
        if not report.is_eigen:
            _logger.warning(
                "not a T_%s eigenform on |D| <= %s", p, report.certified_bound
            )
            continue
        if report.eigenvalue.denominator != 1:
            _logger.warning("eigenvalue %s at %s is not integral", report.eigenvalue, p)
            continue
        eigenvalues[p] = report.eigenvalue.numerator
    if not eigenvalues:
        return None
    try:
        primes = exceptional_intersection(
            eigenvalues, phi.weight, chi=phi.signature.chi
        )
    except (InfiniteSetError, ArgumentError) as exc:
        _logger.warning("exceptional set unavailable: %s", exc)
        return None
    return sorted(primes)


def _scan_params(phi, ell, bound, conditions):
    return {
        "signature": phi.signature.to_dict(),
        "ell": ell,
        "bound": bound,
        "conditions": conditions.to_list(),
    }


def _load_checkpoint(path, params):
    if path is None or not path.exists():
        return 1, 0, []
    with path.open() as stream:
        try:
            state = json.load(stream)
        except ValueError as exc:
            raise ConsistencyError("unreadable checkpoint {}: {}".format(path, exc))
    if state.get("params") != params:
        raise ConsistencyError(
            "checkpoint {} belongs to a different scan: {}".format(
                path, state.get("params")
            )
        )
    hits = [
        ScanHit(hit["D"], hit["rho"], as_rational(hit["coeff"]))
        for hit in state["hits"]
    ]
    _logger.info("resuming %s at |D| = %s", path, state["next"])
    return state["next"], state["examined"], hits


def _save_checkpoint(path, params, next_start, examined, hits):
    state = {
        "params": params,
        "next": next_start,
        "examined": examined,
        "hits": [
            {"D": hit.D, "rho": hit.rho, "coeff": format_rational(hit.coeff)}
            for hit in hits
        ],
    }
    tmp = path.with_name(path.name + ".tmp")
    with tmp.open("w") as stream:
        json.dump(state, stream, indent=2, sort_keys=True)
    os.replace(tmp, path)
    _logger.debug("checkpoint %s written at |D| = %s", path, next_start)


def scan(
    phi,
    ell,
    conditions=None,
    bound=None,
    eigen_primes=(5, 7, 11, 13),
    workers=1,
    checkpoint=None,
    checkpoint_every=10000,
):
    """Sweep fundamental discriminants for coefficients with nu_ell = 0.

    :param workers: worker processes, 0 for one per CPU
    :param checkpoint: path of a resumable JSON state file
    :param checkpoint_every: |D| span scanned between two checkpoint writes
    """
    if not phi.sealed:
        raise ConsistencyError("scan needs a sealed expansion")
    if not is_prime(ell):
        raise ArgumentError("{} is not a prime".format(ell))
    m, N = phi.index, phi.level
    if math.gcd(ell, 2 * m * N) != 1:
        raise ArgumentError(
            "ell = {} must be prime to 2mN = {}".format(ell, 2 * m * N)
        )
    conditions = conditions or LocalConditions()
    conditions.check_coprime(m * N)
    if bound is None:
        bound = phi.bound
    elif bound > phi.bound:
        raise TruncationError(-bound, phi.bound)
    if checkpoint_every < 1:
        raise ArgumentError("checkpoint_every must be positive")
    workers = workers or os.cpu_count() or 1

    report = ScanReport(ell, bound, conditions)
    report.exceptional_set = _exceptional_region(phi, eigen_primes)
    report.seed = _find_seed(phi, ell)

    path = Path(checkpoint) if checkpoint else None
    params = _scan_params(phi, ell, bound, conditions)
    start, report.examined, report.hits = _load_checkpoint(path, params)
    blocks = [
        (low, min(low + checkpoint_every - 1, bound))
        for low in range(start, bound + 1, checkpoint_every)
    ]
    work = partial(_scan_chunk, phi, ell, conditions)

    def merge(results):
        for (low, high), (hits, examined) in zip(blocks, results):
            report.hits.extend(hits)
            report.examined += examined
            _logger.info("scanned |D| in [%s, %s]: %s hits", low, high, len(hits))
            if path is not None:
                _save_checkpoint(path, params, high + 1, report.examined, report.hits)

    if workers == 1 or len(blocks) < 2:
        merge(work(low, high) for low, high in blocks)
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            lows, highs = zip(*blocks)
            merge(executor.map(work, lows, highs))

    if report.exceptional:
        report.exclusion = "exceptional-set"
    elif ell in conditions.primes:
        report.exclusion = "local-condition"
    elif report.seed is None:
        report.exclusion = "no-seed"
    if report.hits:
        report.status = STATUS_HITS
    elif report.seed is None:
        report.status = STATUS_INCONCLUSIVE
    else:
        report.status = STATUS_NO_HITS
    return report


def _shift(n, r, m, N, lam):
    return n + r * N * lam + m * N * N * lam * lam, r + 2 * m * N * lam


def reduce_to_fundamental(phi, n, r):
    """Descend (n, r) to (n0, r0, f) with D = f**2 D0 and c(n, r) = c(f**2 n0, f r0)."""
    m, N = phi.index, phi.level
    D = r * r - 4 * m * n
    if D >= 0:
        raise ArgumentError("D = {} is not negative".format(D))
    if math.gcd(D, m * N) != 1:
        raise ArgumentError("D = {} is not prime to mN = {}".format(D, m * N))
    D0, f = fundamental_decompose(D)
    step = 2 * m * N
    n0, r0 = n, r
    for p, e in sorted(factorize(f).items()):
        for _ in range(e):
            if p == 2:
                for lam in range(4):
                    shifted_n, shifted_r = _shift(n0, r0, m, N, lam)
                    if shifted_n % 4 == 0 and shifted_r % 2 == 0:
                        break
                else:
                    raise ConsistencyError(
                        "no orbit representative of ({}, {}) is divisible by 2".format(
                            n0, r0
                        )
                    )
                n0, r0 = shifted_n // 4, shifted_r // 2
            else:
                lam = (-r0 * pow(step, -1, p)) % p
                shifted_n, shifted_r = _shift(n0, r0, m, N, lam)
                n0, r0 = shifted_n // (p * p), shifted_r // p
    if r0 * r0 - 4 * m * n0 != D0:
        raise ConsistencyError(
            "descent of ({}, {}) ended at D = {}, expected {}".format(
                n, r, r0 * r0 - 4 * m * n0, D0
            )
        )
    if -D <= phi.bound and phi.coeff(n, r) != phi.coeff(f * f * n0, f * r0):
        raise ConsistencyError(
            "c({}, {}) differs from c({}, {})".format(n, r, f * f * n0, f * r0)
        )
    return n0, r0, f


def hecke_relation_check(phi, ell, n, r, f_list):
    """Check nu_ell(c(f**2 n, f r)) >= nu_ell(c(n, r)) for each f in ``f_list``."""
    m, N = phi.index, phi.level
    D = r * r - 4 * m * n
    if not is_fundamental(D):
        raise ArgumentError("D = {} is not a fundamental discriminant".format(D))
    rhs = nu_ell(phi.coeff(n, r), ell)
    entries = []
    for f in f_list:
        if f == 0 or math.gcd(f, m * N) != 1:
            raise ArgumentError("f = {} is not prime to mN = {}".format(f, m * N))
        lhs = nu_ell(phi.coeff(f * f * n, f * r), ell)
        entries.append(RelationEntry(f, lhs, rhs, lhs >= rhs))
    return RelationReport(all(entry.passed for entry in entries), entries)
