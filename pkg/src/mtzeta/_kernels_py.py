"""Pure-Python versions of the hot loops.

These mirror ``_ckernels.pyx`` line for line and are used whenever the
compiled extension is missing or MTZETA_PURE_PYTHON=1 is set.
"""

import math

import numpy as np

# B_{2j}/(2j)! for j = 1..12
_EM = (
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
)


def _fderiv(r, t, N, c, q):
    # q-th derivative of u^{-r} (u+c)^{-t} at u = N
    acc = 0.0
    binom = 1.0
    for i in range(q + 1):
        ri = 1.0
        for a in range(i):
            ri *= r + a
        tl = 1.0
        for a in range(q - i):
            tl *= t + a
        acc += binom * ri * tl * N ** (-r - i) * (N + c) ** (-t - q + i)
        binom = binom * (q - i) / (i + 1)
    return acc if q % 2 == 0 else -acc


def inner_sum(r, t, c, n_cut, em_terms):
    """sum_{n>=1} n^{-r} (n+c)^{-t} with an Euler-Maclaurin tail from n_cut.

    Returns (value, error_estimate). Requires n_cut >= 2c so the binomial
    series for the tail integral converges.
    """
    total = 0.0
    for n in range(1, n_cut):
        total += n ** (-r) * (n + c) ** (-t)
    N = float(n_cut)
    # integral of u^{-r}(u+c)^{-t} over [N, inf)
    ratio = c / N
    lead = N ** (1.0 - r - t)
    integral = 0.0
    coef = 1.0
    for k in range(200):
        term = coef / (r + t + k - 1.0)
        integral += term
        if abs(term) < 1e-18 * abs(integral) and k > 0:
            break
        coef *= -(t + k) / (k + 1.0) * ratio
    integral *= lead
    tail = integral + 0.5 * N ** (-r) * (N + c) ** (-t)
    err = 0.0
    for j in range(1, em_terms + 2):
        term = _EM[j - 1] * _fderiv(r, t, N, c, 2 * j - 1)
        if j == em_terms + 1:
            err = abs(term)
        else:
            tail -= term
    return total + tail, err


def direct_block(r, s, t, x, m_max, n_min, em_terms):
    """sum_{m=1}^{m_max} m^{-s} inner_sum(r, t, m x).

    Returns (value, error_estimate, terms_used).
    """
    total = 0.0
    err = 0.0
    used = 0
    for m in range(1, m_max + 1):
        c = m * x
        n_cut = max(n_min, int(math.ceil(2.0 * c)) + 1)
        v, e = inner_sum(r, t, c, n_cut, em_terms)
        w = m ** (-s)
        total += w * v
        err += w * e
        used += n_cut
    return total, err, used


def polylog_series(s, y):
    """Elementwise sum_u e^{-u y}/u^s for an array of y >= 1/2."""
    y = np.asarray(y, dtype=float)
    out = np.empty_like(y)
    grow = max(0.0, -s)
    for idx in range(y.shape[0]):
        q = math.exp(-y[idx])
        total = 0.0
        zu = 1.0
        u = 1
        while True:
            zu *= q
            term = zu * u ** (-s)
            total += term
            if term == 0.0:
                break
            rho = q * (1.0 + 1.0 / u) ** grow
            if rho < 1.0 and term * rho / (1.0 - rho) < 1e-17 * abs(total):
                break
            u += 1
            if u > 10000000:
                break
        out[idx] = total
    return out
