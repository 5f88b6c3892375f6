"""Real-argument special functions: zeta, Hurwitz zeta, digamma, polylog.

Everything here works in binary64. Algorithms are written against plain
Python floats so a higher precision type could be swapped in later; the
only numpy use is the vectorised polylog helper needed by quadrature.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from mtzeta.errors import DomainError, PoleError

__all__ = [
    "EvalOptions",
    "Constants",
    "CONSTANTS",
    "EULER_GAMMA",
    "STIELTJES_1",
    "Y_SWITCH",
    "bernoulli",
    "bernoulli_poly",
    "riemann_zeta",
    "riemann_zeta_deriv",
    "hurwitz_zeta",
    "hurwitz_zeta_deriv",
    "digamma",
    "digamma_ext",
    "polygamma",
    "polylog_exp",
    "polylog_exp_array",
    "dilog",
    "harmonic",
    "harmonic_exact",
    "binom_ext",
    "rising",
    "rgamma",
    "is_integer",
    "interpolate_near_integer",
    "NEAR_INT_WIDTH",
]


@dataclass(frozen=True)
class EvalOptions:
    """Numerical knobs shared by the evaluators."""

    target_abs_tol: float = 1e-12
    max_terms: int = 10**7
    quad_points: int = 64

    def __post_init__(self):
        if not self.target_abs_tol > 0:
            raise ValueError("target_abs_tol must be positive")
        if self.max_terms < 10:
            raise ValueError("max_terms must be at least 10")
        if self.quad_points < 8:
            raise ValueError("quad_points must be at least 8")


@dataclass(frozen=True)
class Constants:
    euler_gamma: float = 0.57721566490153286060651209008240243
    stieltjes_1: float = -0.07281584548367672486058637587490131913
    pi: float = math.pi


CONSTANTS = Constants()
EULER_GAMMA = CONSTANTS.euler_gamma
STIELTJES_1 = CONSTANTS.stieltjes_1

Y_SWITCH = 0.5
_LOG_2PI = math.log(2.0 * math.pi)


def is_integer(v, tol=0.0):
    """True when v is (within tol of) an integer."""
    return abs(v - round(v)) <= tol


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials (exact, cached)


@lru_cache(maxsize=None)
def _bernoulli_table(n):
    B = [Fraction(0)] * (n + 1)
    B[0] = Fraction(1)
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * B[k]
        B[m] = -acc / (m + 1)
    return tuple(B)


def bernoulli(n):
    """Exact Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise DomainError("bernoulli index must be non-negative")
    size = max(64, n)
    return _bernoulli_table(size)[n]


def bernoulli_poly(n, a):
    """Bernoulli polynomial B_n(a); exact when a is int or Fraction."""
    return sum(math.comb(n, j) * bernoulli(j) * a ** (n - j) for j in range(n + 1))


# B_{2k}/(2k)! as floats, k = 1..30
_EM_COEF = tuple(float(bernoulli(2 * k) / math.factorial(2 * k)) for k in range(1, 31))


# ---------------------------------------------------------------------------
# Hurwitz zeta via Euler-Maclaurin


def _hurwitz_em(s, a, deriv):
    """Return (zeta(s,a), d/ds zeta(s,a)) by Euler-Maclaurin summation.

    The derivative is only computed when deriv is true (else 0.0).
    """
    if s == 1.0:
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    if not a > 0:
        raise DomainError("Hurwitz zeta needs a > 0")
    shift = 16.0 + 0.6 * abs(s)
    N = max(0, int(math.ceil(shift - a)))
    total = 0.0
    dtotal = 0.0
    if N:
        n = np.arange(N, dtype=float) + a
        if deriv:
            lg = np.log(n)
            pw = np.exp(-s * lg)
            total = math.fsum(pw)
            dtotal = -math.fsum(lg * pw)
        else:
            total = math.fsum(n ** (-s))
    A = a + N
    logA = math.log(A)
    As = math.exp(-s * logA)  # A^{-s}
    head = A * As / (s - 1.0) + 0.5 * As
    total += head
    if deriv:
        dtotal += -A * As * logA / (s - 1.0) - A * As / (s - 1.0) ** 2 - 0.5 * logA * As
    # correction terms: B_{2k}/(2k)! * (s)_{2k-1} * A^{-s-2k+1}
    P = s  # rising factorial (s)_{2k-1}
    dP = 1.0
    Apow = As / A  # A^{-s-1}
    inv_a2 = 1.0 / (A * A)
    scale = abs(total) + 1e-300
    for k in range(1, len(_EM_COEF) + 1):
        c = _EM_COEF[k - 1]
        term = c * P * Apow
        total += term
        dterm = 0.0
        if deriv:
            dterm = c * Apow * (dP - P * logA)
            dtotal += dterm
        if k > 1 and abs(term) < 1e-18 * scale and abs(dterm) < 1e-18 * (abs(dtotal) + scale):
            break
        # advance (s)_{2k-1} -> (s)_{2k+1}
        f1 = s + 2 * k - 1
        f2 = s + 2 * k
        dP = (dP * f1 + P) * f2 + P * f1
        P = P * f1 * f2
        Apow *= inv_a2
    return total, dtotal


def hurwitz_zeta(s, a):
    """Hurwitz zeta function zeta(s, a) for real s != 1 and a > 0."""
    s = float(s)
    a = float(a)
    return _hurwitz_em(s, a, False)[0]


def hurwitz_zeta_deriv(s, a):
    """Partial derivative of zeta(s, a) with respect to s."""
    return _hurwitz_em(float(s), float(a), True)[1]


# ---------------------------------------------------------------------------
# Riemann zeta


@lru_cache(maxsize=8192)
def riemann_zeta(s):
    """Riemann zeta function for real s != 1."""
    s = float(s)
    if s == 1.0:
        raise PoleError("riemann_zeta has a pole at s = 1")
    if s <= 0 and s == math.floor(s):
        n = int(-s)
        if n == 0:
            return -0.5
        if n % 2 == 0:
            return 0.0
        return float(-bernoulli(n + 1) / (n + 1))
    if s < -0.05:
        # reflection loses digits near s = 0, where zeta(1 - s) sits next to its pole;
        # zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
        return _chi(s) * riemann_zeta(1.0 - s)
    if s > 60:
        return 1.0 + 2.0 ** (-s) + 3.0 ** (-s)
    return _hurwitz_em(s, 1.0, False)[0]


def _chi_log_parts(s):
    """Pieces of the reflection factor chi(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s)."""
    return math.lgamma(1.0 - s) + s * _LOG_2PI - math.log(math.pi)


def _chi(s):
    return math.exp(_chi_log_parts(s)) * _sin_cos_half_pi(s)[0]


@lru_cache(maxsize=4096)
def riemann_zeta_deriv(s):
    """Derivative zeta'(s) for real s != 1."""
    s = float(s)
    if s == 1.0:
        raise PoleError("riemann_zeta_deriv has a pole at s = 1")
    if s >= -0.5:
        if s > 60:
            return -(math.log(2.0) * 2.0 ** (-s) + math.log(3.0) * 3.0 ** (-s))
        return _hurwitz_em(s, 1.0, True)[1]
    # differentiate zeta(s) = chi(s) zeta(1-s)
    mag = math.exp(_chi_log_parts(s))
    sn, cs = _sin_cos_half_pi(s)
    chi = mag * sn
    dchi = mag * ((_LOG_2PI - digamma(1.0 - s)) * sn + 0.5 * math.pi * cs)
    return dchi * riemann_zeta(1.0 - s) - chi * riemann_zeta_deriv(1.0 - s)


def _sin_cos_half_pi(s):
    """sin and cos of pi s/2, exact at integers."""
    if s == math.floor(s):
        k = int(s) % 4
        return ((0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0))[k]
    h = 0.5 * math.pi * s
    return math.sin(h), math.cos(h)


# ---------------------------------------------------------------------------
# digamma and polygamma

_PSI_ASYM = tuple(float(bernoulli(2 * k)) / (2 * k) for k in range(1, 12))


def _digamma_pos(x):
    acc = 0.0
    while x < 12.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    p = inv2
    for c in _PSI_ASYM:
        series += c * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - series


def digamma(x):
    """Digamma psi(x) for x > 0."""
    x = float(x)
    if not x > 0:
        raise DomainError("digamma needs x > 0")
    return _digamma_pos(x)


def digamma_ext(x):
    """Digamma on the whole real line minus the poles 0, -1, -2, ...

    Negative arguments go through psi(x) = psi(1-x) - pi cot(pi x).
    """
    x = float(x)
    if x > 0:
        return _digamma_pos(x)
    if x == math.floor(x):
        raise PoleError("digamma has a pole at non-positive integers")
    return _digamma_pos(1.0 - x) - math.pi / math.tan(math.pi * x)


def polygamma(j, x):
    """Polygamma psi^{(j)}(x) = (-1)^{j+1} j! zeta(j+1, x), j >= 1, x > 0."""
    if int(j) != j or j < 1:
        raise DomainError("polygamma order must be an integer >= 1")
    x = float(x)
    if not x > 0:
        raise DomainError("polygamma needs x > 0")
    j = int(j)
    sign = 1.0 if j % 2 == 1 else -1.0
    return sign * math.factorial(j) * _hurwitz_em(j + 1.0, x, False)[0]


# ---------------------------------------------------------------------------
# Gamma helpers


def rgamma(x):
    """1/Gamma(x), zero at the non-positive integers."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        return 0.0
    if x > 171.0:
        return math.exp(-math.lgamma(x))
    if abs(x) < 1e-15:
        # Gamma(x) overflows for subnormal x; 1/Gamma(x) = x + gamma x^2 + O(x^3)
        return x * (1.0 + EULER_GAMMA * x)
    return 1.0 / math.gamma(x)


def rising(a, k):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1)."""
    p = 1.0
    for i in range(k):
        p *= a + i
    return p


def harmonic(n):
    """Harmonic number H_n with H_0 = 0."""
    if int(n) != n or n < 0:
        raise DomainError("harmonic needs an integer n >= 0")
    n = int(n)
    if n < 256:
        return math.fsum(1.0 / k for k in range(1, n + 1))
    return _digamma_pos(n + 1.0) + EULER_GAMMA


def harmonic_exact(n):
    """H_n as an exact Fraction."""
    if int(n) != n or n < 0:
        raise DomainError("harmonic needs an integer n >= 0")
    return sum((Fraction(1, k) for k in range(1, int(n) + 1)), Fraction(0))


def binom_ext(a, b):
    """Binomial coefficient with the conventions C(-1,0)=1, C(c,-1)=0, C(-1,-1)=1.

    Negative upper arguments with b >= 0 use the generalised product
    a(a-1)...(a-b+1)/b!, which gives C(-1,0) = 1.
    """
    a = int(a)
    b = int(b)
    if b < 0:
        return 1 if (a == -1 and b == -1) else 0
    if a >= 0:
        return math.comb(a, b) if b <= a else 0
    # a < 0: C(a, b) = (-1)^b C(b - a - 1, b)
    return (-1) ** b * math.comb(b - a - 1, b)


# ---------------------------------------------------------------------------
# Polylogarithm Li_s(e^{-y})


@lru_cache(maxsize=256)
def _stirling2_row(n):
    # S(n, k) for k = 0..n
    row = [1]
    for m in range(1, n + 1):
        new = [0] * (m + 1)
        for k in range(1, m + 1):
            new[k] = k * (row[k] if k < len(row) else 0) + row[k - 1]
        row = new
    return tuple(row)


def _li_nonpos_int(n, y):
    # Li_{-n}(e^{-y}) = sum_k k! S(n+1, k+1) w^{k+1}, w = 1/(e^y - 1)
    w = 1.0 / math.expm1(y)
    S = _stirling2_row(n + 1)
    return math.fsum(math.factorial(k) * S[k + 1] * w ** (k + 1) for k in range(n + 1))


def _li_series(s, y):
    """Defining series sum_u e^{-uy}/u^s, stopped by a geometric tail bound."""
    q = math.exp(-y)
    total = 0.0
    zu = 1.0
    grow = max(0.0, -s)
    u = 1
    while True:
        zu *= q
        term = zu * u ** (-s)
        total += term
        # ratio of consecutive terms is bounded by q (1 + 1/u)^grow
        rho = q * (1.0 + 1.0 / u) ** grow
        if rho < 1.0 and term * rho / (1.0 - rho) < 1e-17 * abs(total):
            break
        u += 1
        if u > 10**7:
            break
    return total


@lru_cache(maxsize=512)
def lie_coefficients(s, kmax):
    """Coefficients (-1)^k zeta(s-k)/k!, k = 0..kmax, skipping a zeta pole.

    The entry whose argument s-k equals 1 is returned as 0.0; callers that
    need the log-corrected term handle it separately.
    """
    out = []
    for k in range(kmax + 1):
        arg = s - k
        if arg == 1.0:
            out.append(0.0)
            continue
        out.append((-1) ** k * riemann_zeta(arg) / math.factorial(k))
    return tuple(out)


NEAR_INT_WIDTH = 1e-2


def interpolate_near_integer(f, n, d, h, at_integer=None, half=3):
    """f(n + d) for small d by Lagrange interpolation through n + k h, |k| <= half.

    Used where a formula for non-integer arguments cancels catastrophically
    next to an integer while the function itself is analytic there.
    at_integer, if given, supplies the k = 0 node.
    """
    ks = range(-half, half + 1)
    u = d / h
    total = 0.0
    for k in ks:
        v = (at_integer or f)(n) if k == 0 else f(n + k * h)
        w = 1.0
        for j in ks:
            if j != k:
                w *= (u - j) / (k - j)
        total = total + w * v
    return total


def _near_positive_integer(s):
    n = round(s)
    d = s - n
    return n >= 1 and 0 < abs(d) < NEAR_INT_WIDTH, n, d


def _lie_small_y(s, y):
    """Small-y expansion of Li_s(e^{-y}); handles s in N by the log term."""
    if s == math.floor(s) and s >= 1:
        n = int(s)
        head = (-1) ** (n - 1) * (harmonic(n - 1) - math.log(y)) * y ** (n - 1) / math.factorial(n - 1)
    else:
        head = math.gamma(1.0 - s) * y ** (s - 1.0)
    kmax = 60
    coef = lie_coefficients(float(s), kmax)
    total = 0.0
    yk = 1.0
    small = 0
    for k in range(kmax + 1):
        term = coef[k] * yk
        total += term
        if abs(term) < 1e-18 * (abs(total) + abs(head)) and k > 2:
            small += 1
            if small >= 2:
                break
        else:
            small = 0
        yk *= y
    return head + total


def polylog_exp(s, y):
    """Li_s(e^{-y}) for real s and y > 0."""
    s = float(s)
    y = float(y)
    if not y > 0:
        raise DomainError("polylog_exp needs y > 0")
    if y >= Y_SWITCH:
        return _li_series(s, y)
    if s <= 0 and s == math.floor(s):
        return _li_nonpos_int(int(-s), y)
    near, n, d = _near_positive_integer(s)
    if near:
        return interpolate_near_integer(lambda v: _lie_small_y(float(v), y), n, d, NEAR_INT_WIDTH)
    return _lie_small_y(s, y)


def polylog_exp_array(s, y):
    """Vectorised Li_s(e^{-y}) over a numpy array of positive y."""
    from mtzeta.kernels import polylog_series

    s = float(s)
    y = np.asarray(y, dtype=float)
    out = np.empty_like(y)
    big = y >= Y_SWITCH
    if np.any(big):
        out[big] = polylog_series(s, np.ascontiguousarray(y[big]))
    small = ~big
    if np.any(small):
        ys = y[small]
        if s <= 0 and s == math.floor(s):
            n = int(-s)
            w = 1.0 / np.expm1(ys)
            S = _stirling2_row(n + 1)
            acc = np.zeros_like(ys)
            for k in range(n, -1, -1):
                acc = (acc + math.factorial(k) * S[k + 1]) * w
            out[small] = acc
        else:
            near, n, d = _near_positive_integer(s)
            if near:
                out[small] = interpolate_near_integer(lambda v: _lie_small_y_array(float(v), ys), n, d,
                                                      NEAR_INT_WIDTH)
            else:
                out[small] = _lie_small_y_array(s, ys)
    return out


def _lie_small_y_array(s, ys):
    kmax = 40
    coef = np.array(lie_coefficients(s, kmax))
    poly = np.zeros_like(ys)
    for c in coef[::-1]:
        poly = poly * ys + c
    if s == math.floor(s) and s >= 1:
        n = int(s)
        head = (-1) ** (n - 1) * (harmonic(n - 1) - np.log(ys)) * ys ** (n - 1) / math.factorial(n - 1)
    else:
        head = math.gamma(1.0 - s) * ys ** (s - 1.0)
    return head + poly


def dilog(z):
    """Dilogarithm Li_2(z) for 0 < z <= 1."""
    z = float(z)
    if not 0 < z <= 1:
        raise DomainError("dilog needs 0 < z <= 1")
    if z == 1.0:
        return math.pi ** 2 / 6.0
    if z > 0.5:
        return math.pi ** 2 / 6.0 - math.log(z) * math.log1p(-z) - dilog(1.0 - z)
    total = 0.0
    zk = z
    k = 1
    while True:
        term = zk / (k * k)
        total += term
        if term < 1e-18 * total:
            break
        k += 1
        zk *= z
    return total
