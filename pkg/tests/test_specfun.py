import math

import numpy as np
import pytest
from scipy import special

from mtzeta.errors import DomainError
from mtzeta.specfun import (
    EULER_GAMMA,
    STIELTJES_1,
    EvalOptions,
    binom_ext,
    dilog,
    digamma,
    harmonic,
    hurwitz_zeta,
    hurwitz_zeta_deriv,
    polygamma,
    polylog_exp,
    polylog_exp_array,
    riemann_zeta,
    riemann_zeta_deriv,
    rgamma,
)

G = EULER_GAMMA


@pytest.mark.parametrize("s, expected", [
    (2.0, math.pi ** 2 / 6),
    (0.0, -0.5),
    (-2.0, 0.0),
    (4.0, math.pi ** 4 / 90),
    (-1.0, -1.0 / 12),
])
def test_riemann_zeta_classical(s, expected):
    assert riemann_zeta(s) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize("s", [1.001, 1.5, 2.5, 7.0, 30.0])
def test_riemann_zeta_matches_scipy(s):
    assert riemann_zeta(s) == pytest.approx(special.zeta(s), rel=1e-12)


@pytest.mark.parametrize("s", [-3.5, -0.5, 0.3, 0.999])
def test_riemann_zeta_functional_equation(s):
    # zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
    ref = 2 ** s * math.pi ** (s - 1) * math.sin(math.pi * s / 2) * math.gamma(1 - s) * riemann_zeta(1 - s)
    assert riemann_zeta(s) == pytest.approx(ref, rel=1e-12)


def test_riemann_zeta_pole():
    with pytest.raises(DomainError):
        riemann_zeta(1.0)


def test_zeta_deriv_at_zero():
    assert riemann_zeta_deriv(0.0) == pytest.approx(-0.5 * math.log(2 * math.pi), abs=1e-13)


@pytest.mark.parametrize("s", [2.0, -1.0, 0.5, 3.7, -2.5])
def test_zeta_deriv_finite_difference(s):
    # plain central differences at h = 1e-4 carry an h^2 error near 1e-8, so
    # one Richardson step is applied
    def d(h):
        return (riemann_zeta(s + h) - riemann_zeta(s - h)) / (2 * h)

    fd = (4 * d(5e-5) - d(1e-4)) / 3
    assert riemann_zeta_deriv(s) == pytest.approx(fd, abs=1e-8)


def test_zeta_deriv_at_two():
    # zeta'(2) = zeta(2) (gamma + log 2 pi - 12 log A)
    log_glaisher = 0.2487544770337842625
    expected = math.pi ** 2 / 6 * (G + math.log(2 * math.pi) - 12 * log_glaisher)
    assert riemann_zeta_deriv(2.0) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("s, a, expected", [
    (2.0, 1.0, math.pi ** 2 / 6),
    (2.0, 0.5, math.pi ** 2 / 2),
    (3.0, 2.0, special.zeta(3.0) - 1.0),
])
def test_hurwitz_examples(s, a, expected):
    assert hurwitz_zeta(s, a) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("s, a", [(1.5, 0.3), (2.5, 7.0), (6.0, 1.25)])
def test_hurwitz_matches_scipy(s, a):
    assert hurwitz_zeta(s, a) == pytest.approx(special.zeta(s, a), rel=1e-13)


def test_hurwitz_deriv_finite_difference():
    h = 1e-5
    fd = (hurwitz_zeta(2.5 + h, 3.0) - hurwitz_zeta(2.5 - h, 3.0)) / (2 * h)
    assert hurwitz_zeta_deriv(2.5, 3.0) == pytest.approx(fd, rel=1e-8)


@pytest.mark.parametrize("x, expected", [
    (1.0, -G),
    (2.0, 1 - G),
    (0.5, -G - 2 * math.log(2)),
])
def test_digamma_values(x, expected):
    assert digamma(x) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize("x", [0.01, 0.37, 1.5, 9.9, 123.4])
def test_digamma_matches_scipy(x):
    assert digamma(x) == pytest.approx(special.digamma(x), rel=1e-13, abs=1e-14)


@pytest.mark.parametrize("j, x, expected", [
    (1, 1.0, math.pi ** 2 / 6),
    (2, 1.0, -2 * special.zeta(3.0)),
    (1, 3.0, math.pi ** 2 / 6 - 1 - 0.25),
])
def test_polygamma_values(j, x, expected):
    assert polygamma(j, x) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("j", [1, 2, 3, 5])
@pytest.mark.parametrize("x", [0.2, 1.7, 40.0])
def test_polygamma_matches_scipy(j, x):
    assert polygamma(j, x) == pytest.approx(special.polygamma(j, x), rel=1e-12)


@pytest.mark.parametrize("y", [0.05, 0.7, 3.0])
def test_polylog_closed_forms(y):
    assert polylog_exp(1, y) == pytest.approx(-math.log(-math.expm1(-y)), rel=1e-14)
    assert polylog_exp(0, y) == pytest.approx(math.exp(-y) / -math.expm1(-y), rel=1e-14)


def test_polylog_two_branches_agree():
    # direct series with 10^6 terms (tail e^{-10^4} is nil) vs the small-y expansion
    u = np.arange(1, 10 ** 6 + 1, dtype=float)
    direct = math.fsum(np.exp(-0.01 * u) / u ** 2.5)
    assert polylog_exp(2.5, 0.01) == pytest.approx(direct, abs=1e-10)


@pytest.mark.parametrize("s", [-2.0, -0.5, 1.0, 2.0, 2.5])
def test_polylog_array_matches_scalar(s):
    ys = np.array([0.01, 0.3, 0.49, 0.5, 0.51, 2.0, 12.0])
    arr = polylog_exp_array(s, ys)
    ref = np.array([polylog_exp(s, y) for y in ys])
    np.testing.assert_allclose(arr, ref, rtol=1e-12)


@pytest.mark.parametrize("z, expected", [
    (1.0, math.pi ** 2 / 6),
    (0.5, math.pi ** 2 / 12 - math.log(2) ** 2 / 2),
])
def test_dilog_values(z, expected):
    assert dilog(z) == pytest.approx(expected, abs=1e-15)


def test_dilog_small_argument_series():
    z = 0.1
    series = math.fsum(z ** k / k ** 2 for k in range(1, 201))
    assert abs(dilog(z) - series) <= 1e-15


def test_dilog_oracle(oracle):
    for entry in oracle["dilog"]:
        if entry["z"] <= 0:
            with pytest.raises(DomainError):
                dilog(entry["z"])
        else:
            assert dilog(entry["z"]) == pytest.approx(entry["value"], abs=1e-15)


@pytest.mark.parametrize("n, expected", [(0, 0.0), (1, 1.0), (4, 25 / 12)])
def test_harmonic(n, expected):
    assert harmonic(n) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("a, b, expected", [
    (-1, 0, 1), (5, -1, 0), (-1, -1, 1), (5, 2, 10), (3, 5, 0), (0, 0, 1),
])
def test_binom_ext(a, b, expected):
    assert binom_ext(a, b) == expected


def test_rgamma_zeros():
    for k in range(0, 5):
        assert rgamma(-k) == 0.0
    assert rgamma(0.5) == pytest.approx(1 / math.sqrt(math.pi))


def test_stieltjes_constant():
    assert STIELTJES_1 == pytest.approx(-0.0728158454836767, abs=1e-15)


def test_eval_options_validation():
    with pytest.raises(ValueError):
        EvalOptions(target_abs_tol=0.0)
    with pytest.raises(ValueError):
        EvalOptions(max_terms=1)


@pytest.mark.parametrize("s", [-4e-25, -1e-300, -1.1e-8, 1e-20, 3e-9])
def test_riemann_zeta_near_zero(s):
    # 1 - s rounds to the pole here; zeta(s) = -1/2 - s log(2 pi)/2 + O(s^2)
    assert riemann_zeta(s) == pytest.approx(-0.5 - 0.5 * s * math.log(2 * math.pi), abs=1e-14)


@pytest.mark.parametrize("x", [5e-324, 1e-300, -1e-200, 1e-16, 2e-15])
def test_rgamma_tiny(x):
    assert rgamma(x) == pytest.approx(x * (1 + EULER_GAMMA * x), rel=1e-14)
