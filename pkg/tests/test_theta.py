import math

import pytest

from mtzeta.errors import DomainError
from mtzeta.specfun import EULER_GAMMA, harmonic, riemann_zeta
from mtzeta.theta import (
    IdentityReport,
    ThetaPoint,
    check_inversion,
    check_recursion,
    check_split,
    double_zeta,
    theta_direct,
    theta_direct_with_error,
    theta_eval,
    theta_series_eval,
)

Z = riemann_zeta


def test_point_domain_flags():
    p = ThetaPoint(1, 1, 1, 1)
    assert p.in_domain_D
    assert p.margins() == (1.0, 1.0, 1.0)
    assert not ThetaPoint(1, 3, 0, 5).in_domain_D
    assert ThetaPoint(2, 3, 0.5, 4).inverted().as_tuple() == (3, 2, 0.5, 0.25)
    with pytest.raises(DomainError):
        ThetaPoint(1, 1, 1, 0.0)


@pytest.mark.parametrize("point, expected", [
    ((0, 0, 3, 1), Z(2) - Z(3)),
    ((1, 1, 1, 1), 2 * Z(3)),
    ((2, 2, 0, 7), Z(2) ** 2),
    ((3, 2, 0, 0.3), Z(3) * Z(2)),
])
def test_direct_closed_values(point, expected):
    assert theta_direct(point) == pytest.approx(expected, abs=1e-12)


def test_direct_reports_error_estimate():
    value, err = theta_direct_with_error(ThetaPoint(1, 1, 1, 1))
    assert abs(value - 2 * Z(3)) <= max(err, 1e-15) * 10
    assert err < 1e-12


def test_direct_refuses_outside_margin():
    with pytest.raises(DomainError):
        theta_direct(ThetaPoint(1, 3, 0, 5))
    with pytest.raises(DomainError):
        theta_direct(ThetaPoint(0.52, 0.52, 0.5, 1))


def test_direct_matches_mellin_oracle(oracle):
    for e in oracle["theta_mellin"]:
        assert theta_direct(ThetaPoint(*e["point"])) == pytest.approx(e["value"], rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("r, s, t, x", [(2, 2, 2, 1), (0, 2, 2, 1), (3, 2.5, 1, 1 / 3), (1, 4, 3, 2), (2, 3, 2, 5)])
def test_series_matches_direct(r, s, t, x):
    assert theta_series_eval(r, s, t, x) == pytest.approx(theta_direct((r, s, t, x)), abs=1e-9)


def test_series_outside_convergence_region():
    # r + t = 1: the closed form gives gamma zeta(3) + sum psi(5m+1)/m^3 = sum_m H_{5m}/m^3 = 5 Theta(1,2,1,5)
    v = theta_series_eval(1, 3, 0, 5)
    N = 20000
    brute = math.fsum(harmonic(5 * m) / m ** 3 for m in range(1, N))
    brute += (math.log(5 * N) + EULER_GAMMA + 0.5) / (2 * N ** 2)  # integral tail
    assert v == pytest.approx(brute, abs=1e-8)
    assert v == pytest.approx(5 * theta_direct((1, 2, 1, 5)), abs=1e-12)


def test_series_continues_in_s():
    # s = 0.5 is outside D for (2, s, 1) only through s + t > 1; the series form still applies
    assert math.isfinite(theta_series_eval(2, 0.5, 1, 1.0))
    with pytest.raises(DomainError):
        theta_series_eval(2, -1.5, 1, 1.0)
    with pytest.raises(DomainError):
        theta_series_eval(1.5, 2, 1, 1.0)


@pytest.mark.parametrize("evaluator", ["direct", "series", "auto"])
def test_theta_eval_dispatch(evaluator):
    assert theta_eval((2, 3, 1, 0.5), evaluator) == pytest.approx(theta_direct((2, 3, 1, 0.5)), abs=1e-12)
    with pytest.raises(ValueError):
        theta_eval((2, 3, 1, 0.5), "quadrature")


@pytest.mark.parametrize("point", [(2, 2, 2, 1), (3, 3, 1, 0.5), (1.5, 2.5, 1.2, 0.3)])
def test_split(point):
    assert check_split(point).residual <= 1e-9


@pytest.mark.parametrize("point", [(2, 3, 2, 2), (1.5, 2.5, 1.2, 0.3), (2, 2, 1, 1)])
def test_inversion(point):
    rep = check_inversion(point)
    assert rep.passed and rep.residual <= 1e-9


def test_inversion_symmetric_point_exact():
    assert check_inversion((2.5, 2.5, 1.5, 1.0)).residual == 0.0


def test_recursion_cases():
    assert check_recursion(0, (2, 2, 2, 1)).residual == 0.0
    assert check_recursion(1, (2, 2, 2, 1)).residual <= 1e-9
    assert check_recursion(1, (2, 2, 2, 1)).lhs == pytest.approx(check_split((2, 2, 2, 1)).lhs)
    assert check_recursion(2, (3, 3, 1, 2)).residual <= 1e-9
    assert check_recursion(3, (3.5, 3.2, 0.8, 0.7), evaluator="direct").residual <= 1e-9
    with pytest.raises(DomainError):
        check_recursion(-1, (3, 3, 1, 2))


def test_identity_report_fields():
    rep = IdentityReport.build("x", 1.0, 1.0 + 1e-12, 1e-9, "series")
    d = rep.as_dict()
    assert d["pass"] is True and d["name"] == "x" and d["evaluator"] == "series"


@pytest.mark.parametrize("s1, s2, expected", [
    (2, 1, 2 * Z(3)),
    (3, 1, math.pi ** 4 / 360 + Z(4)),
    (2, 2, (Z(2) ** 2 - Z(4)) / 2 + Z(4)),
])
def test_double_zeta_values(s1, s2, expected):
    assert double_zeta(s1, s2) == pytest.approx(expected, abs=1e-13)


def test_double_zeta_oracle(oracle):
    for e in oracle["double_zeta"]:
        assert double_zeta(e["s1"], e["s2"]) == pytest.approx(e["value"], rel=1e-13)


def test_double_zeta_strict():
    assert double_zeta(2, 1, diagonal=False) == pytest.approx(Z(3), abs=1e-13)
    with pytest.raises(DomainError):
        double_zeta(1, 3)


def test_euler_constant_value():
    assert EULER_GAMMA == pytest.approx(0.5772156649015329, abs=1e-16)


@pytest.mark.parametrize("r", [2 - 4e-16, 2 + 3e-7, 1 - 5e-5, 3 + 9.9e-5])
def test_direct_near_integer_r(r):
    # the tail switches to interpolation in r here; inversion pins the value
    assert check_inversion(ThetaPoint(r, 2.5, 1.0, 1.3), evaluator="direct").residual <= 1e-12
    assert check_inversion(ThetaPoint(0.0, r, 2.0, 1.0), evaluator="direct").residual <= 1e-12
