"""Exact partial fractions of 1/(n^r (n+y)^t) for integers r, t >= 0.

    1/(n^r (n+y)^t) = (-1)^r sum_{j<t} C(j+r-1, j) / (y^{j+r} (n+y)^{t-j})
                      + sum_{i<r} (-1)^i C(i+t-1, i) / (n^{r-i} y^{t+i})

Coefficients are exact integers; polynomial identities are verified on a
dense grid of Python integers, so no floating point enters the checks.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from mtzeta.errors import DomainError
from mtzeta.specfun import binom_ext
from mtzeta.theta import IdentityReport

__all__ = [
    "PFTerm",
    "PFTable",
    "pf_decompose",
    "numerator_polynomial",
    "numerator_polynomial_expanded",
    "pf_verify_polynomial",
    "pf_numeric_check",
    "alternating_poly_sum",
    "case1_coefficient",
    "a1_sum",
    "a1_closed",
    "a2_sum",
    "a2_closed",
    "cas_identity_lhs",
    "cas_identity_rhs",
]


@dataclass(frozen=True)
class PFTerm:
    """coefficient / (n^n_power y^y_power (n+y)^shifted_power)."""

    index: int
    coefficient: int
    n_power: int
    y_power: int
    shifted_power: int

    def value(self, n, y):
        return self.coefficient / (n ** self.n_power * y ** self.y_power * (n + y) ** self.shifted_power)


@dataclass(frozen=True)
class PFTable:
    r: int
    t: int
    j_terms: tuple
    i_terms: tuple

    @property
    def terms(self):
        return self.j_terms + self.i_terms

    def nonzero_terms(self):
        return tuple(term for term in self.terms if term.coefficient != 0)

    def evaluate(self, n, y, exact=True):
        """Right-hand side at (n, y); exact=True sums in rationals of the inputs."""
        if exact:
            n = Fraction(n)
            y = Fraction(y)
            return sum((term.value(n, y) for term in self.terms), Fraction(0))
        return math.fsum(term.value(float(n), float(y)) for term in self.terms)


def _check_rt(r, t):
    if int(r) != r or int(t) != t or r < 0 or t < 0:
        raise DomainError("r and t must be non-negative integers")
    if r + t < 1:
        raise DomainError("need r + t >= 1")
    return int(r), int(t)


def pf_decompose(r, t):
    """Coefficient table of the decomposition."""
    r, t = _check_rt(r, t)
    j_terms = tuple(
        PFTerm(j, (-1) ** r * binom_ext(j + r - 1, j), 0, j + r, t - j) for j in range(t)
    )
    i_terms = tuple(
        PFTerm(i, (-1) ** i * binom_ext(i + t - 1, i), r - i, t + i, 0) for i in range(r)
    )
    return PFTable(r, t, j_terms, i_terms)


# ---------------------------------------------------------------------------
# dense bivariate polynomials: P[a][b] is the coefficient of n^a y^b


def _zero(deg):
    return [[0] * (deg + 1) for _ in range(deg + 1)]


def _add_monomial(P, a, b, c):
    P[a][b] += c


def _binomial_power(deg, k):
    """(n + y)^k as a dense grid."""
    P = _zero(deg)
    for c in range(k + 1):
        P[c][k - c] = math.comb(k, c)
    return P


def _mul_monomial(P, a, b, c, deg):
    Q = _zero(deg)
    for i, row in enumerate(P):
        for j, v in enumerate(row):
            if v:
                Q[i + a][j + b] += c * v
    return Q


def _add(P, Q):
    return [[p + q for p, q in zip(rp, rq)] for rp, rq in zip(P, Q)]


def numerator_polynomial(r, t):
    """A(n, y) = (-1)^r n^r sum_j C(j+r-1, j) y^{t-j} (n+y)^j + (n+y)^t sum_i C(i+t-1, i) (-1)^i n^i y^{r-i}.

    Built by polynomial multiplication from the definition.
    """
    r, t = _check_rt(r, t)
    deg = r + t
    A = _zero(deg)
    for j in range(t):
        c = (-1) ** r * binom_ext(j + r - 1, j)
        if c:
            A = _add(A, _mul_monomial(_binomial_power(deg, j), r, t - j, c, deg))
    for i in range(r):
        c = (-1) ** i * binom_ext(i + t - 1, i)
        if c:
            A = _add(A, _mul_monomial(_binomial_power(deg, t), i, r - i, c, deg))
    return A


def numerator_polynomial_expanded(r, t):
    """A(n, y) from its fully expanded double-sum form (independent construction)."""
    r, t = _check_rt(r, t)
    deg = r + t
    A = _zero(deg)
    for c in range(t):
        coef = sum(binom_ext(j + r - 1, j) * math.comb(j, c) for j in range(c, t))
        _add_monomial(A, r + c, t - c, (-1) ** r * coef)
    for d in range(t + 1):
        for i in range(r):
            _add_monomial(A, d + i, t - d + r - i, binom_ext(i + t - 1, i) * math.comb(t, d) * (-1) ** i)
    return A


def pf_verify_polynomial(r, t):
    """True iff A(n, y) equals y^{r+t} identically, in exact integer arithmetic."""
    r, t = _check_rt(r, t)
    target = _zero(r + t)
    target[0][r + t] = 1
    return numerator_polynomial(r, t) == target and numerator_polynomial_expanded(r, t) == target


def pf_numeric_check(r, t, n, y, tolerance=None, exact=True):
    """Compare 1/(n^r (n+y)^t) with the table evaluated at (n, y).

    The default tolerance is 1e-12 relative to the left side. With
    exact=True the table is summed in rational arithmetic of the float inputs;
    exact=False sums floats and exposes cancellation when y << n.
    """
    table = pf_decompose(r, t)
    if not (n > 0 and y > 0):
        raise DomainError("n and y must be positive")
    lhs = 1.0 / (float(n) ** table.r * (float(n) + float(y)) ** table.t)
    rhs = float(table.evaluate(n, y, exact=exact))
    if tolerance is None:
        tolerance = 1e-12 * abs(lhs)
    return IdentityReport.build("partial_fraction", lhs, rhs, tolerance, "exact" if exact else "float")


# ---------------------------------------------------------------------------
# the binomial identities used in the proof


def _p(d, a, t):
    """p(d) = (d+t-1)(d+t-2)...(d+t-a+1), degree a - 1 in d."""
    out = 1
    for k in range(1, a):
        out *= d + t - k
    return out


def alternating_poly_sum(a, t):
    """sum_{d=0}^{a} (-1)^d C(a, d) p(d); zero because deg p < a."""
    return sum((-1) ** d * math.comb(a, d) * _p(d, a, t) for d in range(a + 1))


def case1_coefficient(r, t, a):
    """Coefficient of n^a y^{r+t-a} in A for 1 <= a <= r - 1, straight from the double sum."""
    return sum(binom_ext(a - d + t - 1, a - d) * math.comb(t, d) * (-1) ** (a - d) for d in range(a + 1))


def a1_sum(r, t, a):
    return (-1) ** r * sum(binom_ext(j + r - 1, j) * binom_ext(j, a - r) for j in range(a - r, t))


def a1_closed(r, t, a):
    return Fraction((-1) ** r * (r + t - a), a) * math.comb(r + t - 1, t) * binom_ext(t, a - r)


def a2_sum(r, t, a):
    return sum(binom_ext(i + t - 1, i) * binom_ext(t, a - i) * (-1) ** i for i in range(r))


def a2_closed(r, t, a):
    return -Fraction((-1) ** r * (r + t - a), a) * math.comb(r + t - 1, t) * binom_ext(t, a - r)


def _falling_ratio(top, bottom):
    """top!/bottom! for top >= 0 as the product bottom+1..top; zero when bottom < 0 <= top."""
    out = 1
    for k in range(bottom + 1, top + 1):
        out *= k
    return out


def cas_identity_lhs(r, t, a):
    """sum_{j=0}^{r+t-a-1} (-1)^j C(t, j) (j+a-1)!/(j+a-t)!."""
    return sum((-1) ** j * math.comb(t, j) * _falling_ratio(j + a - 1, j + a - t) for j in range(r + t - a))


def cas_identity_rhs(r, t, a):
    """(-1)^{a+r+t} (a-r-t) / (a t (r-1)!) C(t, r+t-a) (r+t-1)!."""
    return (Fraction((-1) ** (a + r + t) * (a - r - t), a * t * math.factorial(r - 1))
            * binom_ext(t, r + t - a) * math.factorial(r + t - 1))
