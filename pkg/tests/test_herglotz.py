import math

import numpy as np
import pytest
from scipy.special import digamma as sp_digamma

from mtzeta.errors import DomainError, UnknownIdentityError
from mtzeta.herglotz import (
    DEFAULT_X_GRID,
    REGISTRY,
    SUITES,
    herglotz_F,
    herglotz_F1_closed,
    higher_herglotz,
    identity_names,
    mixed_series,
    ramanujan_phi,
    resolve_suite,
    run_suite,
    verify_identity,
)
from mtzeta.specfun import EULER_GAMMA, riemann_zeta
from mtzeta.theta import theta_series_eval

G = EULER_GAMMA


def test_F_against_oracle(oracle):
    for row in oracle["herglotz_F"]:
        assert herglotz_F(row["x"]) == pytest.approx(row["value"], abs=1e-12)


def test_higher_F_against_oracle(oracle):
    for row in oracle["higher_herglotz"]:
        assert higher_herglotz(row["r"], row["x"]) == pytest.approx(row["value"], abs=1e-12)


def test_F1_closed_form():
    assert abs(herglotz_F(1.0) - herglotz_F1_closed()) <= 1e-9


def test_F2_at_one_is_euler_sum():
    # psi(n) = -gamma + H_{n-1} and sum H_{n-1}/n^2 = zeta(3)
    assert higher_herglotz(2, 1.0) == pytest.approx(-G * riemann_zeta(2) + riemann_zeta(3), abs=1e-12)


def test_F_naive_partial_sum():
    x, N = 2.0, 10 ** 6
    n = np.arange(1, N + 1, dtype=float)
    naive = math.fsum((sp_digamma(n * x) - np.log(n * x)) / n)
    naive -= 1.0 / (2.0 * x * N)  # tail of -1/(2 x n^2)
    assert abs(herglotz_F(x) - naive) <= 1e-7


@pytest.mark.parametrize("x, expected", [
    (1.0, 0.5 - G),
    (0.5, -G - 2 * math.log(2) + 1 + math.log(2)),
])
def test_ramanujan_phi_values(x, expected):
    assert ramanujan_phi(x) == pytest.approx(expected, abs=1e-14)


def test_ramanujan_phi_decay():
    assert abs(ramanujan_phi(50.0)) <= 1.0 / (6 * 50.0 ** 2)


@pytest.mark.parametrize("fn, args", [
    (herglotz_F, (0.0,)),
    (higher_herglotz, (1, 1.0)),
    (higher_herglotz, (2.5, 1.0)),
    (ramanujan_phi, (-1.0,)),
])
def test_domain_errors(fn, args):
    with pytest.raises(DomainError):
        fn(*args)


@pytest.mark.parametrize("x", [2.0, 0.5])
def test_vz_two_r3(x):
    assert verify_identity("vz_two", {"r": 3, "x": x}).residual <= 1e-9


@pytest.mark.parametrize("r", [2, 4, 6])
def test_vz_two_even_r_antisymmetric_at_one(r):
    assert verify_identity("vz_two", {"r": r, "x": 1.0}).residual <= 1e-12


def test_guinand_high_example():
    assert verify_identity("guinand_high", {"z": 4, "x": 2.0}).residual <= 1e-9


def test_new_mixed_example():
    rep = verify_identity("new_mixed", {"x": 3.0})
    assert rep.rhs == pytest.approx(riemann_zeta(2) ** 2, rel=1e-15)
    assert rep.residual <= 1e-9


def test_zagier_two_fixed_point():
    assert verify_identity("zagier_two", {"x": 1.0}).residual == 0.0


@pytest.mark.parametrize("x", [0.3, 1.0, 2.0, 7.0])
def test_mixed_F_and_new_mixed_both_hold(x):
    a = verify_identity("mixed_F", {"r": 2, "t": 2, "x": x}).residual
    b = verify_identity("new_mixed", {"x": x}).residual
    assert a <= 1e-10 and b <= 1e-10
    assert abs(a - b) <= 1e-10


@pytest.mark.parametrize("r, t", [(2, 2), (2, 3), (3, 2), (3, 3)])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.5])
def test_mixed_series_is_theta(r, t, x):
    assert mixed_series(r, t, x) == pytest.approx(theta_series_eval(r, r, t, x), rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_every_identity_on_its_grid(name):
    for _, rep in run_suite(name):
        assert rep.passed, rep


def test_every_identity_evaluable_at_one():
    for spec in REGISTRY.values():
        params = {p: (3 if p in ("r", "z") else 2 if p == "t" else 1.0) for p in spec.param_names}
        assert spec.evaluate(**params).residual <= 1e-8


def test_registry_shape():
    assert len(REGISTRY) == 10
    assert identity_names() == tuple(REGISTRY)
    assert set(SUITES["all"]) == set(REGISTRY)
    for members in SUITES.values():
        assert set(members) <= set(REGISTRY)


@pytest.mark.parametrize("alias, expected", [
    ("vz", ("vz_two", "vz_three")),
    ("zagier_two", ("zagier_two",)),
    ("guinand", ("guinand_high", "guinand_first")),
])
def test_resolve_suite(alias, expected):
    assert resolve_suite(alias) == expected


def test_unknown_identity():
    with pytest.raises(UnknownIdentityError):
        verify_identity("no_such_identity", {})
    with pytest.raises(UnknownIdentityError):
        resolve_suite("nothing")


def test_parameter_checks():
    with pytest.raises(DomainError):
        verify_identity("vz_two", {"x": 1.0})
    with pytest.raises(DomainError):
        verify_identity("zagier_two", {"x": 1.0, "r": 2})
    with pytest.raises(DomainError):
        verify_identity("guinand_high", {"z": 2, "x": 1.0})


def test_run_suite_overrides():
    reports = run_suite("vz_two", r=(3,), x=(0.7, 1.3))
    assert [p for p, _ in reports] == [{"r": 3, "x": 0.7}, {"r": 3, "x": 1.3}]
    assert len(run_suite("zagier_two")) == len(DEFAULT_X_GRID)


def test_tolerance_controls_verdict():
    loose = verify_identity("zagier_three", {"x": 2.0}, tol=1e-8)
    assert loose.passed and loose.tolerance == 1e-8
    assert not verify_identity("zagier_three", {"x": 2.0}, tol=loose.residual / 2).passed
