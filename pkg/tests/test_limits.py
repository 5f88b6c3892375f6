import math

import pytest

from mtzeta.errors import DispatchError, DomainError
from mtzeta.limits import (
    Case,
    CaseTag,
    Theorem,
    crosscheck_second,
    crosscheck_third,
    dispatch_case,
    klf_second,
    klf_theta11,
    klf_third,
    klf_third_mixed,
    klf_third_nat,
    klf_third_nonpos,
    transport_inversion,
)
from mtzeta.specfun import EULER_GAMMA, STIELTJES_1, riemann_zeta
from mtzeta.herglotz import herglotz_F

G = EULER_GAMMA
Z = riemann_zeta


@pytest.mark.parametrize("r, s, ell, tag", [
    (-1, 3, 2, "T2_3:II"),
    (2, 0.5, 0, "T2_4:I"),
    (1, 1, 0, "T2_4:IV"),
    (0, 0.5, 1, "T2_3:I"),
    (0, 0, 1, "T2_3:III"),
    (0, 1, 1, "T2_3:IV"),
    (2, 0, 0, "T2_4:II"),
    (3, 2, 2, "T2_4:III"),
])
def test_dispatch(r, s, ell, tag):
    assert str(dispatch_case(r, s, ell)) == tag


def test_dispatch_totality():
    # every admissible (r, s, ell) on a grid gets exactly one valid tag
    for r in range(-3, 4):
        for ell in range(max(0, 1 - r), 4):
            for s in [-2, -1, 0, 1, 2, 3, 4, 5, 0.5, 2.5]:
                tag = dispatch_case(r, s, ell)
                assert tag.theorem == (Theorem.T2_3 if r <= 0 else Theorem.T2_4)


def test_dispatch_rejects():
    with pytest.raises(DomainError):
        dispatch_case(-1, 2, 1)
    with pytest.raises(DomainError):
        dispatch_case(1.5, 2, 1)
    with pytest.raises(ValueError):
        CaseTag(Theorem.T2_5, Case.I)


def test_theta11_values():
    s = klf_theta11(1.0)
    assert s.coefficients == pytest.approx((2.0, 2 * G, G * G - math.pi ** 2 / 6), abs=1e-15)
    assert klf_theta11(math.e).coefficient(-1) == pytest.approx(2 * G - 1, abs=1e-15)


@pytest.mark.parametrize("x", [0.5, 1.0, 3.0])
def test_theta11_is_case_iv(x):
    a, b = klf_theta11(x), klf_third_nat(1, 1, 0, x)
    assert a.min_order == b.min_order
    for k in (-2, -1, 0):
        assert a.coefficient(k) == pytest.approx(b.coefficient(k), abs=1e-12)


def test_nonpos_case_ii_instance():
    s = klf_third_nonpos(0, 2, 1, 1.0)
    assert s.residue == pytest.approx(-1.0, abs=1e-15)
    assert s.coefficient(0) == pytest.approx(-(G + 1) + Z(0) * Z(2), abs=1e-13)


def test_nonpos_case_iv_residue():
    assert klf_third(-1, 1, 2, 1.0).residue == pytest.approx(-1 / 12, abs=1e-15)


def test_nat_case_i_instance():
    s = klf_third(2, 3, 0, 1.0)
    assert s.coefficients == pytest.approx((Z(3), G * Z(3) + Z(2) ** 2), abs=1e-13)


def test_nat_case_iii_residue():
    assert klf_third(2, 1, 1, 2.0).residue == pytest.approx(5 * Z(0), abs=1e-14)


def test_mixed_instance():
    # (-1)^0 0! Gamma(1/2) Gamma(-1/2) = -2 pi
    s = klf_third_mixed(0.5, 1.5, 1.0)
    assert s.min_order == 0
    assert s.coefficient(0) == pytest.approx(-2 * math.pi + Z(0.5) * Z(1.5), abs=1e-12)
    assert s.coefficient(0) == pytest.approx(-10.098179426, abs=1e-8)


def test_mixed_swap_consistency():
    a = klf_third_mixed(1.5, 0.5, 2.0)
    b = klf_third_mixed(0.5, 1.5, 0.5)
    assert a.coefficient(0) == pytest.approx(b.coefficient(0), rel=1e-13)


def test_mixed_rejects():
    with pytest.raises(DomainError):
        klf_third_mixed(1.0, 1.5, 1.0)
    with pytest.raises(DomainError):
        klf_third_mixed(0.5, 0.7, 1.0)


THIRD_CASES = [
    (2, 3.0, 0, 1.0), (2, 0.0, 0, 2.0), (3, 2.0, 2, 0.5), (2, 1.0, 0, 1.5), (2, 1.0, 1, 2.0),
    (0, 0.5, 1, 1.0), (0, 2.0, 1, 2.0), (0, 0.0, 1, 0.7), (0, 1.0, 1, 1.3), (-1, 0.5, 2, 2.0),
    (-1, 1.0, 2, 1.0), (0, 2.0, 1, 1.0), (1, 1.0, 0, 0.5), (3, 2.5, 1, 0.8),
]


@pytest.mark.parametrize("r, s, ell, x", THIRD_CASES)
def test_third_variable_crosscheck(r, s, ell, x):
    closed, fitted, res = crosscheck_third(r, s, x, ell=ell)
    tol = 1e-5 if closed.min_order == -2 else 1e-6
    assert max(res) <= tol


@pytest.mark.parametrize("r, s, x", [(0.5, 1.5, 1.0), (0.25, 2.75, 1.0), (1.5, 0.5, 2.0)])
def test_mixed_crosscheck_reports_residue(r, s, x):
    closed, fitted, res = crosscheck_third(r, s, x)
    assert res[-1] <= 1e-6
    # the fitted pole coefficient is reported; it is numerically zero here
    assert abs(fitted.coefficient(-1)) < 1e-6


def test_second_case1_instance():
    s = klf_second(3, 0, 1.0)
    assert s.center == 1.0 and s.min_order == -1
    assert s.residue == pytest.approx(Z(3), abs=1e-15)


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_second_case2_r1_t1(x):
    s = klf_second(1, 1, x)
    L = math.log(x)
    assert s.coefficient(-2) == pytest.approx(1 / x)
    assert s.coefficient(-1) == pytest.approx((G + L) / x)
    c0 = (G * (G + L) + STIELTJES_1) / x + Z(2) / x ** 2 + herglotz_F(x) / x
    assert s.coefficient(0) == pytest.approx(c0, abs=1e-13)


def test_second_remark_value():
    assert klf_second(1, 1, 1.0).coefficient(0) == pytest.approx((6 * G * G + math.pi ** 2) / 12, abs=1e-12)


@pytest.mark.parametrize("r, t, x", [(1, 1, 1.0), (1, 1, 2.0), (1, 2, 1.3), (1, 3, 0.6), (3, 0, 1.0),
                                     (2, 2, 0.5), (4, 1, 3.0), (2, 0, 1.0)])
def test_second_variable_crosscheck(r, t, x):
    closed, fitted, res = crosscheck_second(r, t, x)
    tol = 1e-5 if closed.min_order == -2 else 1e-6
    assert max(res) <= tol


def test_second_harmonic_sign():
    # c_{-1} = x^{-t} (gamma + log x - H_{t-1}); at t = 3, x = 0.6 the fit confirms the minus sign
    s = klf_second(1, 3, 0.6)
    expected = 0.6 ** -3 * (G + math.log(0.6) - 1.5)
    assert s.coefficient(-1) == pytest.approx(expected, rel=1e-13)


def test_second_rejects():
    with pytest.raises(DomainError):
        klf_second(1, 0, 1.0)
    with pytest.raises(DomainError):
        klf_second(0, 2, 1.0)


@pytest.mark.parametrize("x", [0.5, 2.0, 3.0])
def test_transport_inversion(x):
    # Theta(1,1,t,x) = x^{-t} Theta(1,1,t,1/x)
    moved = transport_inversion(klf_theta11(1 / x), x)
    direct = klf_theta11(x)
    for k in (-2, -1, 0):
        assert moved.coefficient(k) == pytest.approx(direct.coefficient(k), abs=1e-12)


def test_transport_identity_and_guard():
    # x = 1 leaves the expansion unchanged
    a = klf_third(2, 3, 0, 1.7)
    b = transport_inversion(a, 1.0)
    assert b.coefficients == a.coefficients
    with pytest.raises(ValueError):
        transport_inversion(klf_second(3, 0, 1.0), 2.0)


def test_closed_forms_refuse_zeta_pole():
    with pytest.raises((DispatchError, DomainError)):
        klf_third(1, 1.5, -1, 1.0)
