import io
import json
import math

import pytest

from jacobi_tools.eisenstein import eisenstein_k1, eisenstein_km
from jacobi_tools.exactarith import is_fundamental, kronecker, nu_ell, sigma_power
from jacobi_tools.exceptions import (
    ArgumentError,
    ConsistencyError,
    InfiniteSetError,
    TruncationError,
)
from jacobi_tools.indivisibility import (
    STATUS_HITS,
    STATUS_INCONCLUSIVE,
    LocalConditions,
    enumerate_fundamentals,
    exceptional_intersection,
    exceptional_set,
    hecke_relation_check,
    reduce_to_fundamental,
    scan,
)
from jacobi_tools.jacobiexp import FormSignature, zero_expansion

from .conftest import oracle_e41_fundamental

# fundamental -2000 <= D < 0 with ell not dividing e_{4,1}(D)
HITS_E41_2000 = {11: 547, 13: 568, 17: 572, 19: 580}


@pytest.fixture(scope="module")
def e41_2000():
    return eisenstein_k1(4, 2000)


@pytest.fixture(scope="module")
def oracle_values_2000():
    return {
        D: oracle_e41_fundamental(D) for D in range(-2000, 0) if is_fundamental(D)
    }


def test_exceptional_set():
    assert exceptional_set(5, 3126, 4) == {2, 3, 5, 7, 13, 31}
    assert exceptional_set(7, 16808, 4) == {2, 3, 5, 7, 19, 43}
    for p in (5, 7, 11, 13):
        assert {q for q in (2, 3, 5, 7, 11, 13) if p * (p - 1) % q == 0} <= (
            exceptional_set(p, sigma_power(5, p), 4)
        )
    with pytest.raises(InfiniteSetError):
        exceptional_set(5, 150, 4)
    with pytest.raises(InfiniteSetError):
        exceptional_set(5, -150, 4)
    with pytest.raises(ArgumentError):
        exceptional_set(5, 0.5, 4)
    with pytest.raises(ArgumentError):
        exceptional_set(6, 3126, 4)


def test_exceptional_intersection():
    for k in (4, 6):
        eigenvalues = {p: sigma_power(2 * k - 3, p) for p in (5, 7, 11, 13)}
        primes = exceptional_intersection(eigenvalues, k)
        assert {2, 3} <= primes
        if k == 4:
            assert primes == {2, 3, 5, 7}
    with pytest.raises(ArgumentError):
        exceptional_intersection({}, 4)


def test_local_conditions():
    conditions = LocalConditions.parse(["5:1", "7:-1"])
    assert conditions.primes == (5, 7)
    assert conditions.signs == (1, -1)
    assert conditions.to_list() == ["5:1", "7:-1"]
    assert conditions.satisfied_by(-3) is False
    assert conditions.satisfied_by(-11)
    for specs in (["5"], ["5:2"], ["4:1"], ["2:1"], ["5:1", "5:-1"], ["x:1"]):
        with pytest.raises(ArgumentError):
            LocalConditions.parse(specs)
    with pytest.raises(ArgumentError):
        LocalConditions.parse(["5:1"]).check_coprime(10)


def test_enumerate_fundamentals():
    assert [D for D, _ in enumerate_fundamentals(20, 1)] == [
        -3,
        -4,
        -7,
        -8,
        -11,
        -15,
        -19,
        -20,
    ]
    assert [rho for _, rho in enumerate_fundamentals(8, 1)] == [1, 0, 1, 0]
    plus5 = LocalConditions.parse(["5:1"])
    assert [D for D, _ in enumerate_fundamentals(20, 1, conditions=plus5)] == [
        -4,
        -11,
        -19,
    ]
    assert all(D % 5 for D, _ in enumerate_fundamentals(300, 5))
    for D, rho in enumerate_fundamentals(300, 3):
        assert (rho * rho - D) % 12 == 0
        assert 0 <= rho < 6
    assert [D for D, _ in enumerate_fundamentals(20, 1, start=10)] == [
        -11,
        -15,
        -19,
        -20,
    ]


def _assert_hit_filters(report, m, N=1):
    for hit in report.hits:
        assert is_fundamental(hit.D)
        assert math.gcd(hit.D, m * N) == 1
        assert (hit.rho * hit.rho - hit.D) % (4 * m) == 0
        assert report.conditions.satisfied_by(hit.D)
        assert nu_ell(hit.coeff, report.ell) == 0


def test_scan_ell_5(e41_small):
    report = scan(e41_small, 5, bound=200)
    expected = [
        D
        for D in range(-1, -201, -1)
        if is_fundamental(D) and nu_ell(oracle_e41_fundamental(D), 5) == 0
    ]
    assert [hit.D for hit in report.hits] == expected
    assert report.hits
    assert report.examined == sum(1 for _ in enumerate_fundamentals(200, 1))
    assert report.exceptional_set == [2, 3, 5, 7]
    assert report.exceptional
    assert report.exclusion == "exceptional-set"
    assert report.status == STATUS_HITS
    assert report.seed == (-3, 1)
    _assert_hit_filters(report, 1)


@pytest.mark.parametrize("ell", [11, 13, 17, 19])
def test_scan_hits_outside_exceptional_set(e41_2000, oracle_values_2000, ell):
    report = scan(e41_2000, ell)
    values = oracle_values_2000.values()
    expected = sum(1 for value in values if nu_ell(value, ell) == 0)
    assert report.hits
    assert len(report.hits) == expected
    assert len(report.hits) == HITS_E41_2000[ell]
    assert report.examined == 611
    assert not report.exceptional
    assert report.exclusion is None
    _assert_hit_filters(report, 1)


def test_scan_with_local_conditions(e41_small):
    conditions = LocalConditions.parse(["5:1", "7:-1"])
    report = scan(e41_small, 11, conditions=conditions)
    assert report.hits
    assert all(kronecker(hit.D, 5) == 1 for hit in report.hits)
    assert all(kronecker(hit.D, 7) == -1 for hit in report.hits)
    _assert_hit_filters(report, 1)
    assert scan(e41_small, 7, conditions=conditions).exclusion == "exceptional-set"


def test_scan_index_three():
    phi = eisenstein_km(4, 3, 300)
    report = scan(phi, 11, eigen_primes=(5, 7))
    assert report.hits
    assert report.exceptional_set is not None
    _assert_hit_filters(report, 3)


def test_scan_preconditions(e41_small):
    with pytest.raises(ArgumentError):
        scan(e41_small, 2)
    with pytest.raises(ArgumentError):
        scan(e41_small, 9)
    with pytest.raises(ArgumentError):
        scan(eisenstein_km(4, 3, 100), 3)
    with pytest.raises(ArgumentError):
        scan(e41_small, 11, checkpoint_every=0)
    with pytest.raises(TruncationError):
        scan(e41_small, 11, bound=501)


def test_scan_zero_expansion():
    report = scan(zero_expansion(FormSignature(4, 1), 100), 5)
    assert report.hits == []
    assert report.examined > 0
    assert report.seed is None
    assert report.exceptional_set is None
    assert report.status == STATUS_INCONCLUSIVE
    assert report.exclusion == "no-seed"


def test_scan_workers_agree(e41_small):
    serial = scan(e41_small, 13, checkpoint_every=60)
    parallel = scan(e41_small, 13, workers=2, checkpoint_every=60)
    assert parallel.hits == serial.hits
    assert parallel.examined == serial.examined


def test_scan_checkpoint_resume(e41_small, tmp_path):
    state = tmp_path / "scan.json"
    full = scan(e41_small, 11, bound=300, checkpoint=state, checkpoint_every=50)
    saved = json.loads(state.read_text())
    assert saved["next"] == 301
    assert len(saved["hits"]) == len(full.hits)

    partial = scan(e41_small, 11, bound=100)
    saved["next"] = 101
    saved["examined"] = partial.examined
    saved["hits"] = [hit for hit in saved["hits"] if hit["D"] >= -100]
    state.write_text(json.dumps(saved))
    resumed = scan(e41_small, 11, bound=300, checkpoint=state, checkpoint_every=50)
    assert resumed.hits == full.hits
    assert resumed.examined == full.examined

    with pytest.raises(ConsistencyError):
        scan(e41_small, 13, bound=300, checkpoint=state)


def test_report_formats(e41_small):
    report = scan(e41_small, 11, bound=30)
    document = report.to_dict()
    assert document["ell"] == 11
    assert document["conditions"] == []
    assert document["hits"][0] == {"D": -3, "rho": 1, "coeff": "56/1"}
    stream = io.StringIO()
    report.write_csv(stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "D,rho,numerator,denominator"
    assert lines[1] == "-3,1,56,1"
    assert len(lines) == len(report.hits) + 1


def test_reduce_to_fundamental(e41_small):
    assert reduce_to_fundamental(e41_small, 7, 1) == (1, 1, 3)
    assert reduce_to_fundamental(e41_small, 1, 1) == (1, 1, 1)
    assert reduce_to_fundamental(e41_small, 3, 0) == (1, 1, 2)
    with pytest.raises(ArgumentError):
        reduce_to_fundamental(e41_small, 0, 0)
    with pytest.raises(ArgumentError):
        reduce_to_fundamental(eisenstein_km(4, 2, 100), 1, 0)


@pytest.mark.parametrize("m", [1, 3, 5])
def test_reduce_postcondition(m):
    phi = eisenstein_km(4, m, 400)
    for D, rho in phi.keys():
        if D == 0 or math.gcd(D, m) != 1:
            continue
        n = (rho * rho - D) // (4 * m)
        n0, r0, f = reduce_to_fundamental(phi, n, rho)
        D0 = r0 * r0 - 4 * m * n0
        assert is_fundamental(D0)
        assert f * f * D0 == D
        assert phi.coeff(f * f * n0, f * r0) == phi.coeff(n, rho)


def test_hecke_relation_check(e41, e61):
    report = hecke_relation_check(e41, 5, 1, 1, [2, 3])
    assert report.passed
    assert [entry.f for entry in report.entries] == [2, 3]
    assert hecke_relation_check(e41, 5, 1, 1, [1]).passed
    entry = hecke_relation_check(e41, 7, 1, 1, [-1]).entries[0]
    assert entry.lhs == entry.rhs
    for phi in (e41, e61):
        for n, r in ((1, 1), (1, 0), (2, 1)):
            for ell in (5, 11, 13):
                assert hecke_relation_check(phi, ell, n, r, [2, 3, 5]).passed


def test_hecke_relation_preconditions(e41_small):
    with pytest.raises(ArgumentError):
        hecke_relation_check(e41_small, 5, 3, 0, [2])
    with pytest.raises(ArgumentError):
        hecke_relation_check(eisenstein_km(4, 2, 100), 5, 1, 1, [2])
    with pytest.raises(ArgumentError):
        hecke_relation_check(e41_small, 5, 1, 1, [0])
