"""Continuation of Theta(r, s, t, x) in t by a regularised Mellin integral.

For r not a positive integer,

    Theta = I(t)/Gamma(t) + Gamma(1-r) Gamma(t+r-1)/Gamma(t) x^{1-r-t} zeta(t+s+r-1)
            + sum_{k<=M} (-1)^k zeta(r-k)/k! (t)_k x^{-t-k} zeta(t+k+s),

    I(t) = int_0^inf y^{t-1} Li_s(e^{-xy}) R_M(y) dy,
    R_M(y) = Li_r(e^{-y}) - Gamma(1-r) y^{r-1} - sum_{k<=M} (-1)^k zeta(r-k) y^k/k!.

For r in N the Gamma term becomes the log-corrected term. The integral is
split at y0 = min(1, 1/x): on (0, y0] both factors are replaced by their
convergent small-y expansions and integrated term by term in closed form;
[y0, inf) uses an exp-sinh (double exponential) rule.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from mtzeta.errors import DomainError, IllConditionedFitError, PoleError, QuadratureError
from mtzeta.specfun import (
    digamma_ext,
    harmonic,
    is_integer,
    interpolate_near_integer,
    lie_coefficients,
    polylog_exp_array,
    rgamma,
    riemann_zeta,
    riemann_zeta_deriv,
    rising,
)

__all__ = [
    "LaurentSeries",
    "QuadratureSpec",
    "POLE_GUARD",
    "NEAR_NAT",
    "continuation_lower_bound",
    "auto_order",
    "regularized_integrand",
    "regularized_integral",
    "theta_continued",
    "theta_continued_nat",
    "theta_continued_any",
    "laurent_fit",
    "singular_points",
]

POLE_GUARD = 1e-3
_HEAD_TERMS = 40  # terms kept in each small-y expansion on (0, y0]
_R_SERIES_MAX_Y = 1.5


@dataclass(frozen=True)
class LaurentSeries:
    """Truncated Laurent expansion sum_k c_k (v - center)^k, k = min_order..max_order."""

    variable: str
    center: float
    min_order: int
    coefficients: tuple
    source: str = "closed_form"
    condition: float = None
    notes: tuple = field(default=())

    def __post_init__(self):
        if self.variable not in ("t", "s"):
            raise ValueError("variable must be 't' or 's'")
        if self.min_order not in (-2, -1, 0):
            raise ValueError("min_order must be -2, -1 or 0")
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
        if not self.coefficients:
            raise ValueError("at least one coefficient is required")

    @property
    def max_order(self):
        return self.min_order + len(self.coefficients) - 1

    def coefficient(self, k):
        """c_k, with zero outside the stored range."""
        if self.min_order <= k <= self.max_order:
            return self.coefficients[k - self.min_order]
        return 0.0

    @property
    def residue(self):
        return self.coefficient(-1)

    def truncated(self, max_order):
        """Copy keeping orders up to max_order."""
        n = max_order - self.min_order + 1
        return LaurentSeries(self.variable, self.center, self.min_order, self.coefficients[:n],
                             self.source, self.condition, self.notes)

    def __call__(self, v):
        h = v - self.center
        return sum(c * h ** (self.min_order + i) for i, c in enumerate(self.coefficients))

    def as_dict(self):
        return {
            "variable": self.variable,
            "center": self.center,
            "min_order": self.min_order,
            "coefficients": list(self.coefficients),
            "source": self.source,
        }


@dataclass(frozen=True)
class QuadratureSpec:
    """How the regularised integral is computed.

    scheme 'double_exponential' integrates (0, y0] in closed form and the
    tail by exp-sinh; 'adaptive_gauss' hands both panels to QUADPACK
    (independent cross-check). panels[1] is the first split point (capped
    at 1/x so the small-y expansions converge).
    """

    scheme: str = "double_exponential"
    panels: tuple = (0.0, 1.0, math.inf)
    abs_tol: float = 1e-13

    def __post_init__(self):
        if self.scheme not in ("double_exponential", "adaptive_gauss"):
            raise ValueError("scheme must be 'double_exponential' or 'adaptive_gauss'")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        p = tuple(float(v) for v in self.panels)
        if len(p) < 3 or any(b <= a for a, b in zip(p, p[1:])) or p[0] != 0.0 or p[-1] != math.inf:
            raise ValueError("panels must be strictly increasing from 0 to inf with an interior split")
        object.__setattr__(self, "panels", p)


_DEFAULT_Q = QuadratureSpec()


# ---------------------------------------------------------------------------
# helpers


def _is_nat(v):
    return v >= 1 and is_integer(v)


def _is_nonpos_int(v):
    return v <= 0 and is_integer(v)


def _gamma_ratio(a, b, shift=None):
    """Gamma(a)/Gamma(b), using the residue ratio when both are at poles.

    With an integer shift = a - b the ratio is the rising factorial (b)_shift,
    which stays exact when a itself rounds onto a pole.
    """
    if shift is not None and is_integer(shift):
        m = int(round(shift))
        if m >= 0:
            return rising(b, m)
        den = rising(b + m, -m)
        if den == 0.0:
            raise PoleError(f"Gamma({a}) is at a pole")
        return 1.0 / den
    pa = _is_nonpos_int(a)
    pb = _is_nonpos_int(b)
    if pa and pb:
        na = int(round(-a))
        nb = int(round(-b))
        return (-1) ** (na - nb) * math.factorial(nb) / math.factorial(na)
    if pa:
        raise PoleError(f"Gamma({a}) is at a pole")
    if pb:
        return 0.0
    if abs(a) < 150 and abs(b) < 150:
        return math.gamma(a) * rgamma(b)
    sa = math.copysign(1.0, math.gamma(a)) if a < 0 else 1.0
    sb = math.copysign(1.0, math.gamma(b)) if b < 0 else 1.0
    return sa * sb * math.exp(math.lgamma(a) - math.lgamma(b))


def _rising_deriv(t, k):
    """d/dt of (t)_k."""
    total = 0.0
    for i in range(k):
        p = 1.0
        for j in range(k):
            if j != i:
                p *= t + j
        total += p
    return total


def _zeta_order(arg):
    """+1 at the pole of zeta, -1 at a trivial zero, else 0."""
    if arg == 1.0:
        return 1
    if arg < 0 and is_integer(arg) and int(round(arg)) % 2 == 0:
        return -1
    return 0


def continuation_lower_bound(M, s):
    """Smallest t (exclusive) for which the regularised integral converges at y = 0.

    Near y = 0 the integrand behaves like y^{t+M} y^{min(0, s-1)} (log y when
    s = 1), so the bound is t > -M - min(1, s).
    """
    return -M - min(1.0, s)


def auto_order(r, s, t, margin=0.5):
    """Smallest admissible M for evaluating at t (plus a margin)."""
    M = max(0, int(math.floor(-t - min(1.0, s) + margin)) + 1)
    if _is_nat(r):
        M = max(M, int(round(r)) - 1)
    return M


def _poles_nonnat(r, s, M):
    """Genuine poles in t of the explicit terms for r not in N."""
    cands = []
    # Gamma(t+r-1) poles
    for l in range(0, M + 40):
        ts = 1.0 - r - l
        order = 1 - (1 if _is_nonpos_int(ts) else 0) + _zeta_order(ts + s + r - 1.0)
        cands.append((ts, order))
    ts = 2.0 - r - s
    order = 1 + (1 if _is_nonpos_int(ts + r - 1.0) else 0) - (1 if _is_nonpos_int(ts) else 0)
    cands.append((ts, order))
    for k in range(M + 1):
        ts = 1.0 - s - k
        if riemann_zeta_safe(r - k) == 0.0:
            continue
        order = 1 - (1 if rising(ts, k) == 0.0 else 0)
        cands.append((ts, order))
    return [(ts, o) for ts, o in cands if o > 0]


def _poles_nat(r, s, M):
    ri = int(round(r))
    cands = []
    for l in range(0, M + 40):
        ts = 1.0 - r - l
        p = ts + s + r - 1.0
        order = 1 + _zeta_order(p)
        cands.append((ts, max(order, 1)))
    ts = 2.0 - r - s
    cands.append((ts, 2 - (1 if rising(ts, ri - 1) == 0.0 else 0)))
    for k in range(M + 1):
        if k == ri - 1:
            continue
        ts = 1.0 - s - k
        if riemann_zeta_safe(r - k) == 0.0:
            continue
        order = 1 - (1 if rising(ts, k) == 0.0 else 0)
        cands.append((ts, order))
    return [(ts, o) for ts, o in cands if o > 0]


def riemann_zeta_safe(v):
    return 0.0 if v == 1.0 else riemann_zeta(v)


def singular_points(r, s, M=8):
    """Poles in t of the continued Theta(r, s, ., x), as sorted (t, order) pairs.

    Only the poles of the explicit terms with k <= M are listed; orders count
    Gamma, psi and zeta singularities net of the zeros of 1/Gamma(t), (t)_k and
    the trivial zeros of zeta.
    """
    r, s = float(r), float(s)
    poles = _poles_nat(r, s, M) if _is_nat(r) else _poles_nonnat(r, s, M)
    merged = {}
    for ts, order in poles:
        key = round(ts, 12)
        merged[key] = max(merged.get(key, 0), order)
    return sorted(merged.items())


def _guard(t, poles):
    for ts, order in poles:
        if abs(t - ts) < POLE_GUARD:
            raise PoleError(
                f"t = {t} is within {POLE_GUARD} of a pole (order {order}) at t = {ts}; "
                "use the closed-form Laurent expansions in mtzeta.limits"
            )


# ---------------------------------------------------------------------------
# the regularised integral


class _Integrand:
    """y^{t-1} Li_s(e^{-xy}) R_M(y) with R_M the regularised Li_r(e^{-y})."""

    def __init__(self, r, s, t, x, M):
        self.r, self.s, self.t, self.x, self.M = r, s, t, x, M
        self.nat = _is_nat(r)
        kmax = M + 60
        self.a = np.array(lie_coefficients(float(r), kmax))  # zero at the r-1 slot when nat
        if self.nat:
            n = int(round(r))
            self.logc = (-1) ** (n - 1) / math.factorial(n - 1)
            self.hr = harmonic(n - 1)
        else:
            self.g = math.gamma(1.0 - r)

    def remainder(self, y):
        """R_M(y) for an array of y > 0."""
        y = np.asarray(y, dtype=float)
        out = np.empty_like(y)
        small = y < _R_SERIES_MAX_Y
        if np.any(small):
            ys = y[small]
            acc = np.zeros_like(ys)
            for c in self.a[: self.M : -1]:  # k = kmax .. M+1
                acc = acc * ys + c
            out[small] = acc * ys ** (self.M + 1)
        big = ~small
        if np.any(big):
            yb = y[big]
            li = polylog_exp_array(self.r, yb)
            poly = np.zeros_like(yb)
            for c in self.a[self.M :: -1]:  # k = M .. 0
                poly = poly * yb + c
            if self.nat:
                n = int(round(self.r))
                head = self.logc * (self.hr - np.log(yb)) * yb ** (n - 1)
            else:
                head = self.g * yb ** (self.r - 1.0)
            out[big] = li - head - poly
        return out

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            lis = polylog_exp_array(self.s, self.x * y)
            vals = y ** (self.t - 1.0) * lis * self.remainder(y)
        vals[~np.isfinite(vals)] = 0.0
        return vals


def regularized_integrand(r, s, t, x, M, y):
    """The regularised integrand evaluated at an array of y (for diagnostics)."""
    return _Integrand(float(r), float(s), float(t), float(x), int(M))(y)


def _head_integral(f, y0):
    """Closed-form integral of the small-y expansions over (0, y0]."""
    r, s, t, x, M = f.r, f.s, f.t, f.x, f.M
    K = _HEAD_TERMS
    ks = np.arange(M + 1, M + 1 + K)
    ak = f.a[M + 1 : M + 1 + K]
    # Li_s(e^{-xy}) = head(y) + sum_j b_j y^j
    bj_raw = np.array(lie_coefficients(float(s), K - 1))
    js = np.arange(K)
    bj = bj_raw * x ** js.astype(float)
    s_nat = _is_nat(s)
    if s_nat:
        n = int(round(s))
        bj[n - 1] = 0.0
    logy0 = math.log(y0)
    # regular part: sum_{k,j} a_k b_j y0^e / e, e = t + k + j
    e = t + ks[:, None] + js[None, :]
    if np.any(e <= 0):
        raise DomainError("t is below the convergence bound of the regularised integral")
    total = float(np.sum(ak[:, None] * bj[None, :] * np.exp(e * logy0) / e))
    # head part
    e1 = t + ks + s - 1.0
    if np.any(e1 <= 0):
        raise DomainError("t is below the convergence bound of the regularised integral")
    if s_nat:
        n = int(round(s))
        c = (-1) ** (n - 1) * x ** (n - 1) / math.factorial(n - 1)
        const = harmonic(n - 1) - math.log(x)
        y0e = np.exp(e1 * logy0)
        plain = y0e / e1
        logpart = y0e * (logy0 / e1 - 1.0 / e1 ** 2)
        total += c * float(np.sum(ak * (const * plain - logpart)))
    else:
        c = math.gamma(1.0 - s) * x ** (s - 1.0)
        total += c * float(np.sum(ak * np.exp(e1 * logy0) / e1))
    return total


def _exp_sinh(f, a, x, abs_tol, max_level=9):
    """int_a^inf f(y) dy with y = a + exp(pi/2 sinh u)."""
    # beyond y - a = 800/x the Li_s(e^{-xy}) factor has underflowed
    umax = math.asinh(2.0 / math.pi * math.log(max(800.0 / x, 2.0)))
    umin = -4.5
    h = 0.5
    prev = None
    history = []
    u = np.arange(umin, umax + h / 2, h)
    nodes = u

    def panel(us):
        ex = np.exp(0.5 * math.pi * np.sinh(us))
        w = 0.5 * math.pi * np.cosh(us) * ex
        return np.sum(w * f(a + ex))

    acc = panel(nodes)
    est = h * acc
    for level in range(1, max_level + 1):
        h *= 0.5
        mids = np.arange(umin + h, umax, 2 * h)
        acc += panel(mids)
        new = h * acc
        history.append(abs(new - est))
        prev, est = est, new
        if level >= 3 and abs(est - prev) <= max(abs_tol, 2e-16 * abs(est)):
            return est, abs(est - prev)
    raise QuadratureError(
        "exp-sinh quadrature did not converge",
        {"levels": max_level, "differences": history, "last": est},
    )


def _scipy_quad(f, a, b, abs_tol):
    from scipy import integrate

    fun = lambda y: float(f(np.array([y]))[0])  # noqa: E731
    val, err = integrate.quad(fun, a, b, epsabs=abs_tol, epsrel=1e-13, limit=400)
    if err > max(100 * abs_tol, 1e-9):
        raise QuadratureError("adaptive quadrature error too large", {"estimate": err, "value": val})
    return val, err


def regularized_integral(r, s, t, x, M, q=None):
    """I(t) = int_0^inf y^{t-1} Li_s(e^{-xy}) R_M(y) dy; returns (value, error_estimate)."""
    q = q or _DEFAULT_Q
    f = _Integrand(float(r), float(s), float(t), float(x), int(M))
    if not t > continuation_lower_bound(M, s):
        raise DomainError(
            f"t = {t} is not above the convergence bound {continuation_lower_bound(M, s)} for M = {M}"
        )
    y0 = min(q.panels[1], 1.0 / x)
    splits = [y0] + [p for p in q.panels[2:-1] if p > y0]
    if q.scheme == "adaptive_gauss":
        head, herr = _scipy_quad(f, 0.0, y0, q.abs_tol)
    else:
        head, herr = _head_integral(f, y0), 0.0
    mid = 0.0
    merr = 0.0
    for a, b in zip(splits, splits[1:]):
        if q.scheme == "adaptive_gauss":
            v, e = _scipy_quad(f, a, b, q.abs_tol)
        else:
            v, e = _tanh_sinh(f, a, b, q.abs_tol)
        mid += v
        merr += e
    if q.scheme == "adaptive_gauss":
        tail, terr = _scipy_quad(f, splits[-1], math.inf, q.abs_tol)
    else:
        tail, terr = _exp_sinh(f, splits[-1], x, q.abs_tol)
    return head + mid + tail, herr + merr + terr


def _tanh_sinh(f, a, b, abs_tol, max_level=9):
    c = 0.5 * (a + b)
    d = 0.5 * (b - a)
    h = 0.5
    umax = 3.2

    def panel(us):
        sh = 0.5 * math.pi * np.sinh(us)
        w = 0.5 * math.pi * np.cosh(us) / np.cosh(sh) ** 2
        return np.sum(w * f(c + d * np.tanh(sh)))

    acc = panel(np.arange(-umax, umax + h / 2, h))
    est = d * h * acc
    for level in range(1, max_level + 1):
        h *= 0.5
        acc += panel(np.arange(-umax + h, umax, 2 * h))
        new = d * h * acc
        prev, est = est, new
        if level >= 3 and abs(est - prev) <= max(abs_tol, 2e-16 * abs(est)):
            return est, abs(est - prev)
    raise QuadratureError("tanh-sinh quadrature did not converge", {"last": est})


# ---------------------------------------------------------------------------
# public evaluators


def _sum_block(r, s, t, x, M, skip=None):
    total = 0.0
    for k in range(M + 1):
        if k == skip:
            continue
        zr = riemann_zeta(r - k)
        if zr == 0.0:
            continue
        arg = t + k + s
        rk = rising(t, k)
        if arg == 1.0:
            if rk != 0.0:
                raise PoleError(f"zeta pole at t + k + s = 1 (k = {k})")
            prod = _rising_deriv(t, k)  # (t)_k zeta(t+k+s) -> d/dt (t)_k
        else:
            if rk == 0.0:
                continue
            prod = rk * riemann_zeta(arg)
        total += (-1) ** k * zr / math.factorial(k) * prod * x ** (-t - k)
    return total


NEAR_NAT = 5e-3


def _near_nat(v):
    n = round(v)
    d = v - n
    return n >= 1 and 0 < abs(d) < NEAR_NAT, n, d


def theta_continued(r, s, t, x, M=None, q=None):
    """Theta(r, s, t, x) continued in t, for r not a positive integer."""
    r, s, t, x = float(r), float(s), float(t), float(x)
    if not x > 0:
        raise DomainError("x must be positive")
    if _is_nat(r):
        raise DomainError("r is a positive integer: use theta_continued_nat")
    return _interp_s(lambda v: _interp_r(r, v, t, x, M, q), s)


def _interp_s(f, s):
    # within NEAR_NAT of a positive integer s the zeta(s-k) pole term cancels
    # Gamma(1-s) to all digits; Theta is analytic in s, so interpolate
    near, n, d = _near_nat(s)
    if near:
        return interpolate_near_integer(f, n, d, NEAR_NAT)
    return f(s)


def _interp_r(r, s, t, x, M, q):
    # the same cancellation between Gamma(1-r) and the regularisation in r
    near, n, d = _near_nat(r)
    if near:
        return interpolate_near_integer(lambda v: _theta_continued_core(v, s, t, x, M, q), n, d, NEAR_NAT,
                                        at_integer=lambda v: _theta_continued_nat_core(v, s, t, x, M, q))
    return _theta_continued_core(r, s, t, x, M, q)


def _theta_continued_core(r, s, t, x, M, q):
    if M is None:
        M = auto_order(r, s, t)
    if int(M) != M or M < 0:
        raise DomainError("M must be a non-negative integer")
    M = int(M)
    _guard(t, _poles_nonnat(r, s, M))
    explicit = _sum_block(r, s, t, x, M)
    p = t + s + r - 1.0
    ratio = _gamma_ratio(t + r - 1.0, t, shift=r - 1.0)
    if ratio != 0.0:
        if p == 1.0:
            raise PoleError("zeta(t+s+r-1) is at its pole")
        explicit += math.gamma(1.0 - r) * ratio * x ** (-(t + r - 1.0)) * riemann_zeta(p)
    rg = rgamma(t)
    if rg == 0.0:
        return explicit
    integral, _ = regularized_integral(r, s, t, x, M, q)
    return explicit + rg * integral


def theta_continued_nat(r, s, t, x, M=None, q=None):
    """Theta(r, s, t, x) continued in t, for r a positive integer (log-corrected form)."""
    if not _is_nat(r):
        raise DomainError("theta_continued_nat needs a positive integer r")
    ri = int(round(r))
    s, t, x = float(s), float(t), float(x)
    if not x > 0:
        raise DomainError("x must be positive")
    if M is not None and (int(M) != M or M < ri - 1):
        raise DomainError("M must be an integer >= r - 1")
    return _interp_s(lambda v: _theta_continued_nat_core(ri, v, t, x, M, q), s)


def _theta_continued_nat_core(ri, s, t, x, M, q):
    ri = int(round(ri))
    if M is None:
        M = auto_order(ri, s, t)
    if int(M) != M or M < ri - 1:
        raise DomainError("M must be an integer >= r - 1")
    M = int(M)
    _guard(t, _poles_nat(float(ri), s, M))
    explicit = _sum_block(float(ri), s, t, x, M, skip=ri - 1)
    coef = rising(t, ri - 1) / math.factorial(ri - 1)
    if coef != 0.0:
        p = t + s + ri - 1.0
        if p == 1.0:
            raise PoleError("zeta(t+s+r-1) is at its pole")
        psi = digamma_ext(t + ri - 1.0)
        bracket = riemann_zeta(p) * (harmonic(ri - 1) - psi + math.log(x)) - riemann_zeta_deriv(p)
        explicit -= (-1) ** ri * coef * x ** (-(t + ri - 1.0)) * bracket
    rg = rgamma(t)
    if rg == 0.0:
        return explicit
    integral, _ = regularized_integral(float(ri), s, t, x, M, q)
    return explicit + rg * integral


def theta_continued_any(r, s, t, x, M=None, q=None):
    """Dispatch to theta_continued_nat or theta_continued depending on r."""
    if _is_nat(r):
        return theta_continued_nat(int(round(r)), s, t, x, M, q)
    return theta_continued(r, s, t, x, M, q)


# ---------------------------------------------------------------------------
# numerical Laurent coefficients


def laurent_fit(f, center, min_order, radius=0.1, npoints=12, max_order=4, variable="t"):
    """Least-squares Laurent coefficients of f around center.

    Samples f(center + h) at h = +-radius*i/npoints, i = 1..npoints, and fits
    sum_{k=min_order}^{max_order} c_k h^k with columns scaled by radius^k.
    """
    if max_order < min_order:
        raise ValueError("max_order must be >= min_order")
    norders = max_order - min_order + 1
    if npoints < norders + 2:
        raise ValueError("npoints must be at least the number of fitted orders + 2")
    if not radius > 0:
        raise ValueError("radius must be positive")
    steps = radius * np.arange(1, npoints + 1) / npoints
    h = np.concatenate([-steps[::-1], steps])
    vals = np.array([f(center + hi) for hi in h], dtype=float)
    orders = np.arange(min_order, max_order + 1)
    A = (h[:, None] / radius) ** orders[None, :]
    cond = float(np.linalg.cond(A))
    if cond > 1e8:
        raise IllConditionedFitError(f"Laurent fit condition number {cond:.3e} exceeds 1e8", cond)
    sol, *_ = np.linalg.lstsq(A, vals, rcond=None)
    coeffs = sol / radius ** orders.astype(float)
    return LaurentSeries(variable, float(center), int(min_order), tuple(coeffs), source="fit", condition=cond)
