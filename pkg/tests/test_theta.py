import io

import pytest

from jacobi_tools.eisenstein import eisenstein_km
from jacobi_tools.exceptions import ArgumentError, ConsistencyError, TruncationError
from jacobi_tools.jacobiexp import FormSignature, JacobiExpansion, zero_expansion
from jacobi_tools.theta import (
    ThetaComponents,
    decompose,
    dump_json,
    load_json,
    reconstruct,
)


def test_decompose_e41(e41_small):
    tc = decompose(e41_small)
    assert len(tc.components) == 2
    assert (-3, 56) in tc.components[1]
    assert (-4, 126) in tc.components[0]
    assert (0, 1) in tc.components[0]
    assert tc.coefficient(1, -7) == 576
    assert tc.coefficient(0, -3) == 0
    with pytest.raises(TruncationError):
        tc.coefficient(1, -501)
    assert all(D % 4 == 1 for D, _ in tc.components[1])
    assert all(D % 4 == 0 for D, _ in tc.components[0])


def test_decompose_zero():
    tc = decompose(zero_expansion(FormSignature(4, 3), 50))
    assert len(tc.components) == 6
    assert all(entries == [] for entries in tc.components.values())


def test_roundtrip_eisenstein(e41_small):
    assert reconstruct(decompose(e41_small), e41_small.signature) == e41_small
    e42 = eisenstein_km(4, 2, 200)
    tc = decompose(e42)
    assert reconstruct(tc, e42.signature) == e42
    for mu in range(4):
        for D, value in tc.components[mu]:
            assert tc.coefficient(-mu, D) == value


def test_reconstruct_single_component():
    tc = ThetaComponents(2, 20, {1: [(-7, 3), (-15, 5)]})
    phi = reconstruct(tc, FormSignature(6, 2))
    direct = JacobiExpansion(FormSignature(6, 2), 20)
    direct.set_coeff(1, 1, 3)
    direct.set_coeff(2, 1, 5)
    assert phi == direct.seal()


def test_reconstruct_errors():
    with pytest.raises(ConsistencyError):
        reconstruct(ThetaComponents(1, 10, {0: [(-3, 1)]}), FormSignature(4, 1))
    with pytest.raises(ConsistencyError):
        reconstruct(ThetaComponents(1, 10, {5: [(-3, 1)]}), FormSignature(4, 1))
    with pytest.raises(ArgumentError):
        reconstruct(ThetaComponents(1, 10), FormSignature(4, 2))
    with pytest.raises(ArgumentError):
        decompose(zero_expansion(FormSignature(4, 1, 2), 10))


def test_random_roundtrip(rng, random_expansion):
    for _ in range(1000):
        phi = random_expansion(rng, rng.randint(1, 12), rng.randint(1, 5), bound=12)
        tc = decompose(phi)
        assert len(tc.components) == 2 * phi.index
        assert reconstruct(tc, phi.signature) == phi
        assert decompose(reconstruct(tc, phi.signature)) == tc


def test_json_export(e41_small):
    tc = decompose(e41_small.restrict(8))
    stream = io.StringIO()
    dump_json(tc, stream)
    assert '"1": [\n      [\n        -3,\n        "56/1"' in stream.getvalue()
    assert load_json(io.StringIO(stream.getvalue())) == tc
    with pytest.raises(ConsistencyError):
        load_json(io.StringIO('{"m": 1}'))
