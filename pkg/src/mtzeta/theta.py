"""Theta(r, s, t, x) = sum_{n,m>=1} n^{-r} m^{-s} (n + m x)^{-t} inside its domain.

Two independent evaluators live here:

* ``theta_direct`` sums the double series. For each m the inner sum over n
  is truncated and closed with an Euler-Maclaurin tail; once m x is large
  the inner sum is replaced by its large-argument expansion and the
  remaining m-sum collapses onto Hurwitz zeta values.
* ``theta_series_eval`` uses the finite partial-fraction reduction to zeta
  values and psi-series, valid for integer r, t >= 0 on the continued
  s-range s > 2 - r - t.
"""

import math
import warnings
from dataclasses import dataclass

from mtzeta import kernels
from mtzeta.errors import AccuracyWarning, BudgetExceededError, DomainError, PoleError
from mtzeta.psiseries import psi_series
from mtzeta.specfun import (
    EULER_GAMMA,
    EvalOptions,
    binom_ext,
    digamma_ext,
    harmonic,
    hurwitz_zeta,
    hurwitz_zeta_deriv,
    is_integer,
    rgamma,
    riemann_zeta,
    rising,
    _EM_COEF,
)

__all__ = [
    "DOMAIN_MARGIN",
    "ThetaPoint",
    "IdentityReport",
    "theta_direct",
    "theta_direct_with_error",
    "theta_series_eval",
    "theta_eval",
    "check_split",
    "check_inversion",
    "check_recursion",
    "double_zeta",
]

DOMAIN_MARGIN = 0.05
_C_SWITCH = 40.0  # inner sums with m x above this use the asymptotic expansion
_EM_TERMS = 8
_DEFAULT_OPTS = EvalOptions()


@dataclass(frozen=True)
class ThetaPoint:
    r: float
    s: float
    t: float
    x: float

    def __post_init__(self):
        if not self.x > 0:
            raise DomainError("Theta needs x > 0")

    def margins(self):
        """Slack in the three inequalities r+t>1, s+t>1, r+s+t>2."""
        r, s, t = self.r, self.s, self.t
        return (r + t - 1.0, s + t - 1.0, r + s + t - 2.0)

    @property
    def in_domain_D(self):
        return min(self.margins()) > 0

    def in_domain_with_margin(self, margin=DOMAIN_MARGIN):
        return min(self.margins()) >= margin

    def inverted(self):
        """The point (s, r, t, 1/x) appearing in the inversion formula."""
        return ThetaPoint(self.s, self.r, self.t, 1.0 / self.x)

    def as_tuple(self):
        return (self.r, self.s, self.t, self.x)


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: float
    rhs: float
    residual: float
    tolerance: float
    passed: bool
    evaluator: str

    @classmethod
    def build(cls, name, lhs, rhs, tolerance, evaluator):
        residual = abs(lhs - rhs)
        return cls(name, float(lhs), float(rhs), float(residual), float(tolerance),
                   bool(residual <= tolerance), evaluator)

    def as_dict(self):
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "evaluator": self.evaluator,
        }


def _as_point(p):
    return p if isinstance(p, ThetaPoint) else ThetaPoint(*p)


# ---------------------------------------------------------------------------
# direct summation


_NEAR_INT = 1e-4


def _inner_asymptotic_tail(r, s, t, x, m0):
    """Tail of the outer sum; near a positive integer r it is interpolated.

    For 0 < |r - n| < _NEAR_INT the Gamma(1-r) and zeta(r-n+1) terms both blow
    up and cancel, so the tail (analytic in r) is taken from the quadratic
    through r = n - h, n, n + h instead.
    """
    n = round(r)
    d = r - n
    if n >= 1 and 0 < abs(d) < _NEAR_INT:
        h = _NEAR_INT
        f0, e0 = _asymptotic_tail(float(n), s, t, x, m0)
        fp, ep = _asymptotic_tail(n + h, s, t, x, m0)
        fm, em = _asymptotic_tail(n - h, s, t, x, m0)
        value = f0 + d * (fp - fm) / (2 * h) + d * d * (fp - 2 * f0 + fm) / (2 * h * h)
        return value, e0 + ep + em + 1e-16 * abs(fp - fm) / h
    return _asymptotic_tail(r, s, t, x, m0)


def _asymptotic_tail(r, s, t, x, m0):
    """sum_{m>m0} m^{-s} h(m x), h(c) = sum_n n^{-r}(n+c)^{-t}, via the c -> inf expansion.

    h(c) ~ Gamma(1-r)Gamma(t+r-1)/Gamma(t) c^{1-r-t} + sum_k (-1)^k zeta(r-k)(t)_k/k! c^{-t-k};
    for r in N the k = r-1 term and the Gamma term merge into a log term.
    Returns (value, error_estimate).
    """
    a = m0 + 1.0
    nat = r >= 1 and is_integer(r)
    total = 0.0
    p = s + r + t - 1.0
    if nat:
        ri = int(round(r))
        coef = (-1) ** (ri - 1) * rising(t, ri - 1) / math.factorial(ri - 1)
        if coef:
            lg = harmonic(ri - 1) - digamma_ext(t + ri - 1.0) + math.log(x)
            total += coef * x ** (1.0 - r - t) * (lg * hurwitz_zeta(p, a) - hurwitz_zeta_deriv(p, a))
    else:
        g = math.gamma(1.0 - r) * math.gamma(t + r - 1.0) * rgamma(t)
        if g:
            total += g * x ** (1.0 - r - t) * hurwitz_zeta(p, a)
    small = 0
    err = 0.0
    kfact = 1.0
    for k in range(0, 80):
        if k:
            kfact *= k
        if nat and k == int(round(r)) - 1:
            continue
        coef = rising(t, k) / kfact
        if coef == 0.0 and k > 0:
            err = 0.0  # (t)_k vanishes from here on: the expansion is exact
            break
        z = riemann_zeta(r - k)
        term = (-1) ** k * z * coef * x ** (-t - k) * hurwitz_zeta(s + t + k, a)
        total += term
        if abs(term) < 1e-18 * (abs(total) + 1e-300):
            small += 1
            if small >= 3:
                err = abs(term)
                break
        else:
            small = 0
        err = abs(term)
    return total, err


def theta_direct_with_error(p, opts=None):
    """Direct double-sum evaluation; returns (value, error_estimate)."""
    p = _as_point(p)
    opts = opts or _DEFAULT_OPTS
    if not p.in_domain_with_margin():
        raise DomainError(
            f"({p.r}, {p.s}, {p.t}) is not inside the convergence region with margin {DOMAIN_MARGIN}"
        )
    r, s, t, x = p.as_tuple()
    m0 = max(8, int(math.ceil(_C_SWITCH / x)))
    n_min = 16 + int(math.ceil(abs(r) + abs(t)))
    planned = m0 * n_min + int(m0 * m0 * x) + m0
    if planned > opts.max_terms:
        raise BudgetExceededError(f"direct sum needs about {planned} terms (cap {opts.max_terms})")
    head, head_err, _ = kernels.direct_block(float(r), float(s), float(t), float(x), m0, n_min, _EM_TERMS)
    tail, tail_err = _inner_asymptotic_tail(r, s, t, x, m0)
    value = head + tail
    err = head_err + tail_err + 4e-16 * (abs(head) + abs(tail))
    return value, err


def theta_direct(p, opts=None):
    """Theta by direct summation (the oracle evaluator)."""
    opts = opts or _DEFAULT_OPTS
    value, err = theta_direct_with_error(p, opts)
    if err > opts.target_abs_tol:
        warnings.warn(
            f"theta_direct error estimate {err:.2e} exceeds target {opts.target_abs_tol:.2e}",
            AccuracyWarning,
            stacklevel=2,
        )
    return value


# ---------------------------------------------------------------------------
# closed series form for integer r, t


def theta_series_eval(r, s, t, x, opts=None):
    """Theta(r, s, t, x) for integers r, t >= 0 via zeta values and psi-series.

    Valid for s > 2 - r - t, which continues Theta in s beyond its
    convergence region.
    """
    if int(r) != r or int(t) != t or r < 0 or t < 0:
        raise DomainError("theta_series_eval needs integers r, t >= 0")
    r = int(r)
    t = int(t)
    if r + t < 1:
        raise DomainError("theta_series_eval needs r + t >= 1")
    if not s > 2 - r - t:
        raise DomainError(f"theta_series_eval needs s > 2 - r - t = {2 - r - t}")
    if not x > 0:
        raise DomainError("theta_series_eval needs x > 0")
    opts = opts or _DEFAULT_OPTS
    total = 0.0
    for i in range(0, r - 1):
        arg = s + t + i
        if arg == 1.0:
            raise PoleError(f"zeta({arg}) pole in the zeta-product block")
        c = binom_ext(i + t - 1, i)
        if c:
            total += (-1) ** i * x ** (-t - i) * c * riemann_zeta(arg) * riemann_zeta(r - i)
    w = binom_ext(r + t - 2, t - 1)
    if w:
        pw = r + s + t - 1.0
        block = EULER_GAMMA * riemann_zeta(pw) + psi_series(0, pw, x, shift=1, max_terms=opts.max_terms)
        total -= (-1) ** r * x ** (-(r + t - 1)) * w * block
    for j in range(0, t - 1):
        c = binom_ext(j + r - 1, j)
        if not c:
            continue
        q = t - j - 1
        ser = psi_series(q, r + s + j, x, shift=1, max_terms=opts.max_terms)
        total += (-1) ** r * c * (-1) ** (t - j) / math.factorial(q) * x ** (-(j + r)) * ser
    return total


# ---------------------------------------------------------------------------
# evaluator dispatch and structural identities

EVALUATORS = ("direct", "series", "auto")


def _series_ok(p):
    return (
        is_integer(p.r)
        and is_integer(p.t)
        and p.r >= 0
        and p.t >= 0
        and p.r + p.t >= 1
        and p.s > 2 - p.r - p.t
    )


def theta_eval(p, evaluator="auto", opts=None):
    """Evaluate Theta at p with the named evaluator ('direct', 'series', 'auto')."""
    p = _as_point(p)
    if evaluator == "direct":
        return theta_direct(p, opts)
    if evaluator == "series":
        if not _series_ok(p):
            raise DomainError("series evaluator needs integers r, t >= 0 with r + t >= 1 and s > 2 - r - t")
        return theta_series_eval(int(round(p.r)), p.s, int(round(p.t)), p.x, opts)
    if evaluator == "auto":
        if _series_ok(p):
            return theta_series_eval(int(round(p.r)), p.s, int(round(p.t)), p.x, opts)
        return theta_direct(p, opts)
    raise ValueError(f"unknown evaluator {evaluator!r}")


def _pick_evaluator(points, evaluator):
    """Resolve 'auto' to one evaluator usable at every point."""
    if evaluator != "auto":
        return evaluator
    if all(_series_ok(q) for q in points):
        return "series"
    return "direct"


def _require_domain(points, evaluator):
    for q in points:
        if evaluator == "direct" and not q.in_domain_with_margin():
            raise DomainError(f"point {q.as_tuple()} is outside the convergence region with margin")
        if evaluator == "series" and not _series_ok(q):
            raise DomainError(f"point {q.as_tuple()} is not valid for the series evaluator")


def check_split(p, opts=None, evaluator="auto", tol=1e-9):
    """Residual of Theta(r,s,t,x) - Theta(r-1,s,t+1,x) - x Theta(r,s-1,t+1,x)."""
    p = _as_point(p)
    r, s, t, x = p.as_tuple()
    pts = [p, ThetaPoint(r - 1, s, t + 1, x), ThetaPoint(r, s - 1, t + 1, x)]
    ev = _pick_evaluator(pts, evaluator)
    _require_domain(pts, ev)
    lhs = theta_eval(pts[0], ev, opts)
    rhs = theta_eval(pts[1], ev, opts) + x * theta_eval(pts[2], ev, opts)
    return IdentityReport.build("split", lhs, rhs, tol, ev)


def check_inversion(p, opts=None, evaluator="auto", tol=1e-9):
    """Residual of Theta(r,s,t,x) - x^{-t} Theta(s,r,t,1/x)."""
    p = _as_point(p)
    q = p.inverted()
    ev = _pick_evaluator([p, q], evaluator)
    _require_domain([p, q], ev)
    lhs = theta_eval(p, ev, opts)
    rhs = p.x ** (-p.t) * theta_eval(q, ev, opts)
    return IdentityReport.build("inversion", lhs, rhs, tol, ev)


def check_recursion(n, p, opts=None, evaluator="auto", tol=1e-9):
    """Residual of Theta(r,s,t,x) - sum_l C(n,l) x^l Theta(r-n+l, s-l, t+n, x).

    Each summand point is checked individually before evaluation.
    """
    if int(n) != n or n < 0:
        raise DomainError("recursion depth n must be a non-negative integer")
    n = int(n)
    p = _as_point(p)
    r, s, t, x = p.as_tuple()
    if n == 0:
        ev = _pick_evaluator([p], evaluator)
        _require_domain([p], ev)
        v = theta_eval(p, ev, opts)
        return IdentityReport.build("recursion", v, v, tol, ev)
    pts = [ThetaPoint(r - n + l, s - l, t + n, x) for l in range(n + 1)]
    ev = _pick_evaluator([p] + pts, evaluator)
    _require_domain([p] + pts, ev)
    lhs = theta_eval(p, ev, opts)
    rhs = math.fsum(math.comb(n, l) * x ** l * theta_eval(q, ev, opts) for l, q in enumerate(pts))
    return IdentityReport.build("recursion", lhs, rhs, tol, ev)


# ---------------------------------------------------------------------------
# double zeta


def double_zeta(s1, s2, opts=None, diagonal=True):
    """Double zeta sum_{n>=1} sum_{m>=n} m^{-s1} n^{-s2}.

    The diagonal m = n is included by default; diagonal=False gives the
    strict sum over m > n.
    """
    if not s1 > 1 or not s1 + s2 > 2:
        raise DomainError("double_zeta needs s1 > 1 and s1 + s2 > 2")
    N = 40
    head = math.fsum(n ** (-s2) * hurwitz_zeta(s1, n) for n in range(1, N))
    # zeta(s1, n) ~ n^{1-s1}/(s1-1) + n^{-s1}/2 + sum_k B_2k/(2k)! (s1)_{2k-1} n^{-s1-2k+1}
    tail = hurwitz_zeta(s1 + s2 - 1.0, N) / (s1 - 1.0) + 0.5 * hurwitz_zeta(s1 + s2, N)
    for k in range(1, 12):
        tail += _EM_COEF[k - 1] * rising(s1, 2 * k - 1) * hurwitz_zeta(s1 + s2 + 2 * k - 1, N)
    value = head + tail
    if not diagonal:
        value -= riemann_zeta(s1 + s2)
    return value
