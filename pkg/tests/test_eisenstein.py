import math
from fractions import Fraction

import pytest

from jacobi_tools.eisenstein import eisenstein_k1, eisenstein_km, integral_normalization
from jacobi_tools.exactarith import prime_divisors, sigma_power
from jacobi_tools.exceptions import ArgumentError, ConsistencyError
from jacobi_tools.jacobiexp import FormSignature, JacobiExpansion, scale
from jacobi_tools.lvalues import zeta_negative
from jacobi_tools.operators import detect_eigenvalue

E41_TABLE = {
    0: 1,
    -3: 56,
    -4: 126,
    -7: 576,
    -8: 756,
    -11: 1512,
    -12: 2072,
    -15: 4032,
    -16: 4158,
}


def test_e41_coefficients(e41_small):
    assert e41_small.coeff(0, 0) == 1
    assert e41_small.coeff(1, 1) == 56
    assert e41_small.coeff(1, 0) == 126
    assert e41_small.coeff(2, 1) == 576
    for D, value in E41_TABLE.items():
        assert e41_small.coeff_at(D, D % 2) == value


def test_e41_is_cached():
    assert eisenstein_k1(4, 500) is eisenstein_k1(4, 500)
    assert eisenstein_k1(4, 500).sealed


def test_weight_checks():
    for k in (2, 3, 5):
        with pytest.raises(ArgumentError):
            eisenstein_k1(k, 10)
    with pytest.raises(ArgumentError):
        eisenstein_km(4, 0, 10)


def test_singular_coefficients(e41_small):
    for D, rho in e41_small.keys():
        if D == 0:
            assert e41_small.coeff_at(D, rho) == 1
    for m in (2, 3, 4, 6):
        phi = eisenstein_km(4, m, 40)
        for D, rho in phi.keys():
            if D == 0:
                n = rho * rho // (4 * m)
                assert phi.coeff_at(D, rho) == sigma_power(3, math.gcd(n, rho, m))


def test_e4m():
    assert eisenstein_km(4, 1, 500) is eisenstein_k1(4, 500)
    e42 = eisenstein_km(4, 2, 100)
    assert e42.coeff(1, 1) == 576
    assert e42.coeff_at(-7, 3) == 576
    assert e42.coeff(2, 2) == 2072 + 8 * 56


@pytest.mark.parametrize("k, p", [(4, 5), (4, 7), (6, 5)])
def test_e_km_eigenvalues(k, p):
    phi = eisenstein_km(k, 2, p * p * 20)
    report = detect_eigenvalue(phi, p)
    assert report.eigenvalue == sigma_power(2 * k - 3, p)


def test_normalization_of_integral_form(e41_small):
    phi, scalar = integral_normalization(e41_small)
    assert scalar == 1
    assert phi == e41_small


def test_normalization_single_coefficient():
    psi = JacobiExpansion(FormSignature(4, 1), 10)
    psi.set_coeff(1, 1, Fraction(1, 6))
    psi.seal()
    phi, scalar = integral_normalization(psi)
    assert scalar == 6
    assert phi.coeff(1, 1) == 1
    assert integral_normalization(psi, ell_exclusions=[2])[1] == 3
    psi = JacobiExpansion(FormSignature(4, 1), 10, {(-3, 1): Fraction(1, 5)}).seal()
    with pytest.raises(ConsistencyError):
        integral_normalization(psi, carlitz_weight=4)


def test_normalization_of_zeta_scaled_eisenstein(e41_small):
    zeta_scaled = scale(e41_small, zeta_negative(-5))
    phi, scalar = integral_normalization(zeta_scaled, carlitz_weight=4)
    assert set(prime_divisors(scalar.numerator)) <= {2, 3, 7}
    assert all(value.denominator == 1 for _, value in phi.items())
    assert phi == scale(e41_small, -1)
