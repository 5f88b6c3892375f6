"""Closed-form Kronecker limit (Laurent) expansions of Theta.

Third variable: around t = 1 - r - l for integer r (r <= 0 and r >= 1
separately, four cases each) and around t = 2 - r - s for non-integer r, s
with r + s an integer >= 2. Second variable: around s = 1 - t for integer
r >= 1 and t >= 0.

Every function returns a LaurentSeries with orders from the leading pole up
to the constant term. ``crosscheck_third`` and ``crosscheck_second`` compare
against least-squares fits of the continued evaluators.
"""

import math
from dataclasses import dataclass
from enum import Enum

from mtzeta.continuation import (
    LaurentSeries,
    laurent_fit,
    singular_points,
    theta_continued,
    theta_continued_any,
)
from mtzeta.errors import DispatchError, DomainError
from mtzeta.psiseries import psi_series
from mtzeta.specfun import (
    EULER_GAMMA,
    STIELTJES_1,
    binom_ext,
    harmonic,
    is_integer,
    polygamma,
    riemann_zeta,
)
from mtzeta.theta import theta_series_eval

__all__ = [
    "Theorem",
    "Case",
    "CaseTag",
    "dispatch_case",
    "klf_third_nonpos",
    "klf_third_nat",
    "klf_third_mixed",
    "klf_second",
    "klf_theta11",
    "klf_third",
    "transport_inversion",
    "fit_radius",
    "crosscheck_third",
    "crosscheck_second",
]

_INT_TOL = 1e-12


class Theorem(str, Enum):
    T2_3 = "T2_3"  # third variable, r in Z \ N
    T2_4 = "T2_4"  # third variable, r in N
    T2_5 = "T2_5"  # third variable, r, s not integers, r + s in N
    T4_4 = "T4_4"  # second variable
    PP11 = "PP11"  # Theta(1, 1, t, x) at t = 0


class Case(str, Enum):
    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"
    C1 = "C1"
    C2 = "C2"
    NA = "NA"


_VALID = {
    Theorem.T2_3: {Case.I, Case.II, Case.III, Case.IV},
    Theorem.T2_4: {Case.I, Case.II, Case.III, Case.IV},
    Theorem.T2_5: {Case.NA},
    Theorem.T4_4: {Case.C1, Case.C2},
    Theorem.PP11: {Case.NA},
}


@dataclass(frozen=True)
class CaseTag:
    theorem: Theorem
    case_id: Case

    def __post_init__(self):
        object.__setattr__(self, "theorem", Theorem(self.theorem))
        object.__setattr__(self, "case_id", Case(self.case_id))
        if self.case_id not in _VALID[self.theorem]:
            raise ValueError(f"case {self.case_id.value} is not valid for {self.theorem.value}")

    def __str__(self):
        return f"{self.theorem.value}:{self.case_id.value}"


def _as_int(v, name):
    if not is_integer(v, _INT_TOL):
        raise DomainError(f"{name} must be an integer, got {v}")
    return int(round(v))


def dispatch_case(r, s, ell):
    """Which case of the third-variable limit theorems applies at t = 1 - r - ell."""
    r = _as_int(r, "r")
    ell = _as_int(ell, "ell")
    if ell < 0 or ell < 1 - r:
        raise DomainError(f"need ell >= max(0, 1 - r), got ell = {ell}, r = {r}")
    s_int = is_integer(s, _INT_TOL)
    si = int(round(s)) if s_int else None
    if r <= 0:
        th = Theorem.T2_3
        if not s_int:
            case = Case.I
        elif si > r + ell:
            case = Case.II if si == ell + 1 else Case.I
        else:
            case = Case.III if si <= 0 else Case.IV
    else:
        th = Theorem.T2_4
        if not s_int or si > r + ell:
            case = Case.I
        elif si <= 0:
            case = Case.II
        else:
            case = Case.IV if si == ell + 1 else Case.III
    return CaseTag(th, case)


def _require(tag, theorem, case=None):
    if tag.theorem != theorem or (case is not None and tag.case_id != case):
        raise DispatchError(f"arguments dispatch to {tag}, not {theorem.value}")


def _zeta_checked(v):
    if v == 1.0:
        raise DispatchError("zeta(1) appeared in a closed-form coefficient")
    return riemann_zeta(v)


def _third_series(coeffs, min_order, center, tag, notes=()):
    return LaurentSeries("t", float(center), min_order, tuple(coeffs), source="closed_form",
                         notes=(str(tag),) + tuple(notes))


def klf_third_nonpos(r, s, ell, x):
    """Expansion around t = 1 - r - ell for integer r <= 0."""
    tag = dispatch_case(r, s, ell)
    _require(tag, Theorem.T2_3)
    r = int(round(r))
    ell = int(round(ell))
    x = float(x)
    n = r + ell - 1  # >= 0
    fn = math.factorial(n)
    gr = math.factorial(-r)  # Gamma(1 - r)
    sgn = (-1) ** (r - 1)
    center = 1 - r - ell
    case = tag.case_id
    if case == Case.II:
        s_val = float(ell + 1)
    else:
        s_val = float(s)

    def block(skip=None):
        total = 0.0
        for k in range(n + 1):
            if k == skip:
                continue
            z2 = _zeta_checked(1.0 - r - ell + k + s_val)
            total += binom_ext(n, k) * x ** (n - k) * riemann_zeta(r - k) * z2
        return total

    zl = None if case == Case.II else _zeta_checked(s_val - ell)
    head = sgn * fn / math.factorial(ell) * gr * x ** ell
    if case == Case.I:
        return _third_series([head * zl + block()], 0, center, tag)
    if case == Case.II:
        res = head
        c0 = head * (EULER_GAMMA - math.log(x) + harmonic(ell) - harmonic(n)) + block()
        return _third_series([res, c0], -1, center, tag)
    si = int(round(s_val))
    if case == Case.III:
        extra = (-1) ** (si - 1) * x ** (si - 1) * fn * math.factorial(-si) / math.factorial(n + 1 - si) * zl
        return _third_series([head * zl + block() + extra], 0, center, tag)
    # Case IV
    res = x ** (si - 1) * fn / (math.factorial(n + 1 - si) * math.factorial(si - 1)) * zl
    c0 = res * (EULER_GAMMA - harmonic(n) + harmonic(si - 1) - math.log(x)) + head * zl + block(skip=n + 1 - si)
    return _third_series([res, c0], -1, center, tag)


def klf_third_nat(r, s, ell, x):
    """Expansion around t = 1 - r - ell for integer r >= 1."""
    tag = dispatch_case(r, s, ell)
    _require(tag, Theorem.T2_4)
    r = int(round(r))
    ell = int(round(ell))
    x = float(x)
    n = r + ell - 1
    center = 1 - r - ell
    case = tag.case_id
    s_val = float(ell + 1) if case == Case.IV else float(s)
    C = binom_ext(n, ell)
    g = EULER_GAMMA
    hr, hl, hn = harmonic(r - 1), harmonic(ell), harmonic(n)

    def block(skip=()):
        total = 0.0
        for k in range(n + 1):
            if k == r - 1 or k in skip:
                continue
            total += binom_ext(n, k) * x ** (n - k) * riemann_zeta(r - k) * _zeta_checked(1.0 + k - ell - r + s_val)
        return total

    if case == Case.IV:
        cm2 = 2.0 * C * x ** ell
        cm1 = C * x ** ell * (2 * g + hl + hr - 2 * hn - math.log(x))
        c0 = (C * x ** ell / 3.0) * (
            -math.pi ** 2 + 3 * (g + hl - hn - math.log(x)) * (g + hr - hn) + 3 * polygamma(1, r + ell)
        ) + block()
        return _third_series([cm2, cm1, c0], -2, center, tag)
    zl = _zeta_checked(s_val - ell)
    res = C * x ** ell * zl
    c0 = res * (g + hr - hn)
    if case == Case.I:
        return _third_series([res, c0 + block()], -1, center, tag)
    si = int(round(s_val))
    if case == Case.II:
        extra = (-1) ** (si - 1) * math.factorial(n) * math.factorial(-si) / math.factorial(n + 1 - si) * x ** (si - 1) * zl
        return _third_series([res, c0 + block() + extra], -1, center, tag)
    # Case III
    C2 = binom_ext(n, si - 1)
    res2 = C2 * x ** (si - 1) * zl
    c0 += res2 * (g + harmonic(si - 1) - hn - math.log(x))
    return _third_series([res + res2, c0 + block(skip=(n + 1 - si,))], -1, center, tag)


def klf_third_mixed(r, s, x):
    """Expansion around t = 2 - r - s for non-integer r, s with r + s in N, r + s >= 2.

    The pole of zeta(t + s + r - 1) is cancelled by the zero of 1/Gamma(t),
    so the expansion starts at order 0.
    """
    r, s, x = float(r), float(s), float(x)
    if is_integer(r, _INT_TOL) or is_integer(s, _INT_TOL):
        raise DomainError("r and s must both be non-integers")
    if not is_integer(r + s, _INT_TOL) or round(r + s) < 2:
        raise DomainError("r + s must be an integer >= 2")
    n = int(round(r + s)) - 2
    head = (-1) ** n * x ** (s - 1) * math.factorial(n) * math.gamma(1 - r) * math.gamma(1 - s)
    total = head
    for k in range(n + 1):
        total += binom_ext(n, k) * x ** (n - k) * riemann_zeta(r - k) * riemann_zeta(k - r + 2)
    tag = CaseTag(Theorem.T2_5, Case.NA)
    return _third_series([total], 0, 2.0 - r - s, tag,
                         notes=("no pole term: the zeta pole is cancelled by 1/Gamma(t)",))


def klf_third(r, s, ell, x):
    """klf_third_nonpos or klf_third_nat depending on the sign of r."""
    r = _as_int(r, "r")
    return klf_third_nat(r, s, ell, x) if r >= 1 else klf_third_nonpos(r, s, ell, x)


def klf_theta11(x):
    """Theta(1, 1, t, x) around t = 0: 2/t^2 + (2 gamma - log x)/t + gamma^2 - gamma log x - pi^2/6."""
    x = float(x)
    if not x > 0:
        raise DomainError("x must be positive")
    g = EULER_GAMMA
    L = math.log(x)
    return LaurentSeries("t", 0.0, -2, (2.0, 2 * g - L, g * g - g * L - math.pi ** 2 / 6),
                         source="closed_form", notes=(str(CaseTag(Theorem.PP11, Case.NA)),))


def klf_second(r, t, x):
    """Expansion of Theta(r, s, t, x) in s around s = 1 - t.

    Case 1 (r >= 2, t >= 0): simple pole with residue x^{-t} zeta(r).
    Case 2 (r = 1, t >= 1): double pole.
    """
    r = _as_int(r, "r")
    t = _as_int(t, "t")
    x = float(x)
    if not x > 0:
        raise DomainError("x must be positive")
    g = EULER_GAMMA
    center = float(1 - t)
    if r >= 2 and t >= 0:
        tag = CaseTag(Theorem.T4_4, Case.C1)
        res = x ** (-t) * riemann_zeta(r)
        c0 = g * res
        for j in range(t - 1):
            q = t - j - 1
            c0 += ((-1) ** r * binom_ext(j + r - 1, j) * (-1) ** (t - j) / math.factorial(q)
                   * x ** (-(j + r)) * psi_series(q, r + j - t + 1, x, shift=1))
        for i in range(1, r - 1):
            c0 += (-1) ** i * x ** (-(t + i)) * binom_ext(i + t - 1, i) * riemann_zeta(i + 1) * riemann_zeta(r - i)
        w = binom_ext(r + t - 2, t - 1)
        if w:
            c0 -= (-1) ** r * x ** (-(r + t - 1)) * w * (g * riemann_zeta(r) + psi_series(0, r, x, shift=1))
        return LaurentSeries("s", center, -1, (res, c0), source="closed_form", notes=(str(tag),))
    if r == 1 and t >= 1:
        tag = CaseTag(Theorem.T4_4, Case.C2)
        xt = x ** (-t)
        a = g + math.log(x) - harmonic(t - 1)
        c0 = xt * (g * a + STIELTJES_1) + t * riemann_zeta(2) * x ** (-(t + 1))
        c0 += xt * psi_series(0, 1, x, shift=0, drop=1)
        for j in range(t - 1):
            q = t - j - 1
            series = psi_series(q, j - t + 2, x, shift=0, drop=1)
            c0 -= (-1) ** (t - j) * x ** (-j - 1) / math.factorial(q) * series
        return LaurentSeries("s", center, -2, (xt, xt * a, c0), source="closed_form", notes=(str(tag),))
    raise DomainError("klf_second needs r >= 2, t >= 0 or r = 1, t >= 1")


def transport_inversion(series, x):
    """Expansion of x^{-t} * f(t) given the expansion of f in t (orders up to 0).

    Used to compare Theta(r, s, t, x) with x^{-t} Theta(s, r, t, 1/x).
    """
    if series.variable != "t":
        raise ValueError("transport_inversion acts on expansions in t")
    L = -math.log(x)
    base = x ** (-series.center)
    out = []
    for k in range(series.min_order, 1):
        acc = 0.0
        for j in range(series.min_order, k + 1):
            acc += series.coefficient(j) * L ** (k - j) / math.factorial(k - j)
        out.append(base * acc)
    return LaurentSeries("t", series.center, series.min_order, tuple(out), source=series.source)


def _compare(closed, fitted):
    return [abs(closed.coefficient(k) - fitted.coefficient(k)) for k in range(closed.min_order, 1)]


def fit_radius(r, s, center, radius=0.05):
    """radius, shrunk to a fifth of the distance to the nearest other pole in t."""
    others = [abs(ts - center) for ts, _ in singular_points(r, s) if abs(ts - center) > 1e-9]
    if others:
        radius = min(radius, min(others) / 5.0)
    return radius


def crosscheck_third(r, s, x, ell=None, radius=0.05, npoints=16, max_order=6):
    """Closed form vs laurent_fit of the continued evaluator.

    With ell given, (r, s) are integers-or-not as for klf_third; without it
    the mixed expansion around t = 2 - r - s is used. Returns
    (closed, fitted, residuals) with residuals for orders min_order..0.
    For the mixed case the fit starts at order -1 so a missing pole term
    would show up as a nonzero fitted residue.
    """
    if ell is None:
        closed = klf_third_mixed(r, s, x)
        fit_min = -1
    else:
        closed = klf_third(r, s, ell, x)
        fit_min = closed.min_order
    radius = fit_radius(r, s, closed.center, radius)
    fitted = laurent_fit(lambda t: theta_continued_any(r, s, t, x), closed.center, fit_min,
                         radius=radius, npoints=npoints, max_order=max_order)
    return closed, fitted, _compare(closed, fitted)


def _theta_in_s(r, t, x):
    """Theta(r, s, t, x) as a function of s near s = 1 - t."""
    if r >= 2:
        return lambda s: theta_series_eval(r, s, t, x)
    # r = 1: the series form needs s > 1 - t, so go through the inversion and
    # continue in the first slot, which is analytic away from its own poles
    return lambda s: x ** (-t) * theta_continued(s, 1, t, 1.0 / x)


def crosscheck_second(r, t, x, radius=0.05, npoints=16, max_order=6):
    """klf_second vs a least-squares fit in s; returns (closed, fitted, residuals)."""
    closed = klf_second(r, t, x)
    fitted = laurent_fit(_theta_in_s(int(r), int(t), float(x)), closed.center, closed.min_order,
                         radius=radius, npoints=npoints, max_order=max_order, variable="s")
    return closed, fitted, _compare(closed, fitted)
