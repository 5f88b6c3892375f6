"""Herglotz-Zagier type functions and the registry of modular-relation checks.

All infinite series go through ``psi_series``, which sums the first terms
directly and the rest through the asymptotic expansion of the polygamma
function, so every identity is evaluated to near machine precision.
"""

import math
from dataclasses import dataclass, field

from mtzeta.errors import DomainError, UnknownIdentityError
from mtzeta.psiseries import psi_series
from mtzeta.specfun import (
    EULER_GAMMA,
    STIELTJES_1,
    binom_ext,
    digamma,
    dilog,
    riemann_zeta,
)
from mtzeta.theta import IdentityReport, double_zeta

__all__ = [
    "GOLDEN_RATIO",
    "DEFAULT_X_GRID",
    "herglotz_F",
    "herglotz_F1_closed",
    "higher_herglotz",
    "ramanujan_phi",
    "ramanujan_phi_sum",
    "mixed_series",
    "IdentitySpec",
    "REGISTRY",
    "SUITES",
    "identity_names",
    "resolve_suite",
    "verify_identity",
    "run_suite",
]

GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0
DEFAULT_X_GRID = (0.2, 0.5, 1.0, GOLDEN_RATIO, 2.0, 5.0)
DEFAULT_TOL = 1e-8
_EVALUATOR = "psi_series"


def _check_x(x):
    x = float(x)
    if not x > 0:
        raise DomainError("x must be positive")
    return x


def herglotz_F(x):
    """F(x) = sum_n (psi(n x) - log(n x)) / n."""
    return psi_series(0, 1, _check_x(x), shift=0, drop=1)


def herglotz_F1_closed():
    """F(1) = -gamma^2/2 - pi^2/12 - gamma_1."""
    g = EULER_GAMMA
    return -0.5 * g * g - math.pi ** 2 / 12.0 - STIELTJES_1


def higher_herglotz(r, x):
    """F_r(x) = sum_n psi(n x) / n^r for integer r >= 2."""
    if int(r) != r or r < 2:
        raise DomainError("higher_herglotz needs an integer r >= 2")
    return psi_series(0, int(r), _check_x(x), shift=0)


def ramanujan_phi(x):
    """phi(x) = psi(x) + 1/(2x) - log x."""
    x = _check_x(x)
    return digamma(x) + 0.5 / x - math.log(x)


def ramanujan_phi_sum(x):
    """sum_n phi(n x)."""
    return psi_series(0, 0, _check_x(x), shift=0, drop=2)


def _zeta_vz(v):
    """zeta with the convention zeta(1) = gamma, used only inside the registry."""
    return EULER_GAMMA if v == 1 else riemann_zeta(v)


def _double_zeta_vz(s1, s2):
    """Strict double zeta (m > n); zeta(1, s2) regularised by the stuffle relation."""
    if s1 == 1:
        return EULER_GAMMA * riemann_zeta(s2) - double_zeta(s2, 1, diagonal=False) - riemann_zeta(s2 + 1)
    return double_zeta(s1, s2, diagonal=False)


def mixed_series(r, t, x):
    """The function of the mixed functional equation (series form of Theta(r, r, t, x))."""
    r, t = int(r), int(t)
    x = _check_x(x)
    total = 0.0
    for j in range(t - 1):
        q = t - j - 1
        total += ((-1) ** r * binom_ext(j + r - 1, j) * (-1) ** (t - j) / math.factorial(q)
                  * x ** (-(j + r)) * psi_series(q, 2 * r + j, x, shift=1))
    for i in range(r - 1):
        total += (-1) ** i * x ** (-(t + i)) * binom_ext(i + t - 1, i) * riemann_zeta(r + t + i) * riemann_zeta(r - i)
    w = binom_ext(r + t - 2, t - 1)
    if w:
        p = 2 * r + t - 1
        total -= (-1) ** r * x ** (-(r + t - 1)) * w * (EULER_GAMMA * riemann_zeta(p) + psi_series(0, p, x, shift=1))
    return total


# ---------------------------------------------------------------------------
# identity residual functions: each returns (lhs, rhs)


def _zagier_two(x):
    x = _check_x(x)
    lhs = herglotz_F(x) + herglotz_F(1.0 / x)
    rhs = 2.0 * herglotz_F(1.0) + 0.5 * math.log(x) ** 2 - math.pi ** 2 / (6.0 * x) * (x - 1.0) ** 2
    return lhs, rhs


def _zagier_three(x):
    x = _check_x(x)
    lhs = herglotz_F(x) - herglotz_F(x + 1.0) - herglotz_F(x / (x + 1.0))
    rhs = -herglotz_F(1.0) + dilog(1.0 / (1.0 + x))
    return lhs, rhs


def _check_r(r):
    if int(r) != r or r < 2:
        raise DomainError("r must be an integer >= 2")
    return int(r)


def _vz_two(r, x):
    r = _check_r(r)
    x = _check_x(x)
    lhs = higher_herglotz(r, x) + (-x) ** (r - 1) * higher_herglotz(r, 1.0 / x)
    rhs = riemann_zeta(r + 1) * ((-x) ** r - 1.0 / x)
    rhs -= math.fsum(_zeta_vz(l) * _zeta_vz(r - l + 1) * (-x) ** (l - 1) for l in range(1, r + 1))
    return lhs, rhs


def _vz_three(r, x):
    r = _check_r(r)
    x = _check_x(x)
    lhs = higher_herglotz(r, x) - higher_herglotz(r, x + 1.0) + (-x) ** (r - 1) * higher_herglotz(r, (x + 1.0) / x)
    rhs = riemann_zeta(r + 1) * ((-x) ** r / (x + 1.0) - 1.0 / x)
    rhs -= math.fsum(_double_zeta_vz(r - l + 1, l) * (-x) ** (l - 1) for l in range(1, r + 1))
    return lhs, rhs


def _guinand_high(z, x):
    if int(z) != z or z <= 2:
        raise DomainError("z must be an integer > 2")
    z = int(z)
    x = _check_x(x)
    lhs = x ** (z / 2.0) * psi_series(z - 1, 0, x, shift=1)
    rhs = x ** (-z / 2.0) * psi_series(z - 1, 0, 1.0 / x, shift=1)
    return lhs, rhs


def _guinand_first(x):
    x = _check_x(x)
    lhs = x * psi_series(1, 0, x, shift=1, drop=1) - 0.5 * math.log(x)
    rhs = psi_series(1, 0, 1.0 / x, shift=1, drop=1) / x - 0.5 * math.log(1.0 / x)
    return lhs, rhs


def _ramanujan_first(x):
    x = _check_x(x)
    g = EULER_GAMMA
    lhs = math.sqrt(x) * ((g - math.log(2 * math.pi * x)) / (2 * x) + ramanujan_phi_sum(x))
    rhs = math.sqrt(1.0 / x) * (x * (g - math.log(2 * math.pi / x)) / 2 + ramanujan_phi_sum(1.0 / x))
    return lhs, rhs


def _mixed_F(r, t, x):
    r = _check_r(r)
    if int(t) != t or t < 2:
        raise DomainError("t must be an integer >= 2")
    t = int(t)
    x = _check_x(x)
    return mixed_series(r, t, x), x ** (-t) * mixed_series(r, t, 1.0 / x)


def _new_mixed(x):
    x = _check_x(x)
    lhs = (-psi_series(1, 2, x, shift=1) + psi_series(1, 2, 1.0 / x, shift=1)
           + 2.0 / x * (EULER_GAMMA * riemann_zeta(3) + psi_series(0, 3, x, shift=1)))
    return lhs, riemann_zeta(2) ** 2


def _herglotz_F1():
    return herglotz_F(1.0), herglotz_F1_closed()


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class IdentitySpec:
    """One registered identity.

    arity pairs each parameter name with a short domain description; grid maps
    them to the default values swept by ``run_suite``.
    """

    name: str
    arity: tuple
    residual_fn: object = field(repr=False)
    source: str
    grid: dict = field(default_factory=dict, compare=False)

    @property
    def param_names(self):
        return tuple(p for p, _ in self.arity)

    def evaluate(self, tol=DEFAULT_TOL, **kwargs):
        missing = [p for p in self.param_names if p not in kwargs]
        if missing:
            raise DomainError(f"{self.name} needs parameters {missing}")
        extra = [k for k in kwargs if k not in self.param_names]
        if extra:
            raise DomainError(f"{self.name} does not take parameters {extra}")
        lhs, rhs = self.residual_fn(**kwargs)
        return IdentityReport.build(self.name, lhs, rhs, tol, _EVALUATOR)


_X = ("x", "x > 0")
_R = ("r", "integer r >= 2")

REGISTRY = {
    spec.name: spec
    for spec in (
        IdentitySpec("zagier_two", (_X,), _zagier_two,
                     "two-term functional equation of the Herglotz-Zagier function",
                     {"x": DEFAULT_X_GRID}),
        IdentitySpec("zagier_three", (_X,), _zagier_three,
                     "three-term functional equation of the Herglotz-Zagier function",
                     {"x": DEFAULT_X_GRID}),
        IdentitySpec("vz_two", (_R, _X), _vz_two,
                     "two-term functional equation of the higher Herglotz function (zeta(1) = gamma)",
                     {"r": (2, 3, 4), "x": DEFAULT_X_GRID}),
        IdentitySpec("vz_three", (_R, _X), _vz_three,
                     "three-term functional equation of the higher Herglotz function",
                     {"r": (2, 3, 4), "x": DEFAULT_X_GRID}),
        IdentitySpec("guinand_high", (("z", "integer z > 2"), _X), _guinand_high,
                     "Guinand's relation for higher derivatives of psi",
                     {"z": (3, 4, 5), "x": DEFAULT_X_GRID}),
        IdentitySpec("guinand_first", (_X,), _guinand_first,
                     "Guinand's relation for the first derivative of psi",
                     {"x": DEFAULT_X_GRID}),
        IdentitySpec("ramanujan_first", (_X,), _ramanujan_first,
                     "Ramanujan's modular relation for phi (first equality)",
                     {"x": DEFAULT_X_GRID}),
        IdentitySpec("mixed_F", (_R, ("t", "integer t >= 2"), _X), _mixed_F,
                     "mixed functional equation F(x) = x^{-t} F(1/x)",
                     {"r": (2, 3), "t": (2, 3), "x": DEFAULT_X_GRID}),
        IdentitySpec("new_mixed", (_X,), _new_mixed,
                     "mixed identity equal to zeta(2)^2",
                     {"x": DEFAULT_X_GRID}),
        IdentitySpec("herglotz_F1", (), _herglotz_F1,
                     "closed form of F(1) through the first Stieltjes constant",
                     {}),
    )
}

SUITES = {
    "guinand": ("guinand_high", "guinand_first"),
    "ramanujan": ("ramanujan_first",),
    "zagier": ("zagier_two", "zagier_three", "herglotz_F1"),
    "vz": ("vz_two", "vz_three"),
    "mixed": ("mixed_F", "new_mixed"),
    "all": tuple(REGISTRY),
}


def identity_names():
    return tuple(REGISTRY)


def resolve_suite(name):
    """Registry names for an identity name or suite alias."""
    if name in REGISTRY:
        return (name,)
    if name in SUITES:
        return SUITES[name]
    raise UnknownIdentityError(f"unknown identity or suite {name!r}")


def verify_identity(name, params=None, tol=DEFAULT_TOL):
    """Evaluate one registered identity at the given parameters."""
    if name not in REGISTRY:
        raise UnknownIdentityError(f"unknown identity {name!r}")
    return REGISTRY[name].evaluate(tol=tol, **dict(params or {}))


def _sweep(spec, overrides):
    grid = dict(spec.grid)
    for key, values in overrides.items():
        if key in spec.param_names:
            grid[key] = tuple(values)
    names = spec.param_names
    combos = [{}]
    for n in names:
        combos = [dict(c, **{n: v}) for c in combos for v in grid[n]]
    return combos


def run_suite(name="all", tol=DEFAULT_TOL, **overrides):
    """Reports for every identity in a suite over its parameter grid.

    Keyword overrides replace grid values, e.g. x=(0.5, 1, 2) or r=(3,).
    Returns a list of (params, IdentityReport).
    """
    out = []
    for ident in resolve_suite(name):
        spec = REGISTRY[ident]
        for params in _sweep(spec, overrides):
            out.append((params, spec.evaluate(tol=tol, **params)))
    return out
