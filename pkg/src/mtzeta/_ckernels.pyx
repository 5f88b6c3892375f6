# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_kernels_py``."""

from libc.math cimport pow, exp, ceil, fabs

import numpy as np

cdef double[12] _EM
_EM[:] = [
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
]


cdef double _fderiv(double r, double t, double N, double c, int q) nogil:
    cdef double acc = 0.0, binom = 1.0, ri, tl
    cdef int i, a
    for i in range(q + 1):
        ri = 1.0
        for a in range(i):
            ri *= r + a
        tl = 1.0
        for a in range(q - i):
            tl *= t + a
        acc += binom * ri * tl * pow(N, -r - i) * pow(N + c, -t - q + i)
        binom = binom * (q - i) / (i + 1)
    if q % 2 == 0:
        return acc
    return -acc


cdef void _inner(double r, double t, double c, int n_cut, int em_terms,
                 double* val, double* err) nogil:
    cdef double total = 0.0, N, ratio, lead, integral, coef, term, tail
    cdef int n, k, j
    for n in range(1, n_cut):
        total += pow(<double>n, -r) * pow(n + c, -t)
    N = <double>n_cut
    ratio = c / N
    lead = pow(N, 1.0 - r - t)
    integral = 0.0
    coef = 1.0
    for k in range(200):
        term = coef / (r + t + k - 1.0)
        integral += term
        if fabs(term) < 1e-18 * fabs(integral) and k > 0:
            break
        coef *= -(t + k) / (k + 1.0) * ratio
    integral *= lead
    tail = integral + 0.5 * pow(N, -r) * pow(N + c, -t)
    err[0] = 0.0
    for j in range(1, em_terms + 2):
        term = _EM[j - 1] * _fderiv(r, t, N, c, 2 * j - 1)
        if j == em_terms + 1:
            err[0] = fabs(term)
        else:
            tail -= term
    val[0] = total + tail


def inner_sum(double r, double t, double c, int n_cut, int em_terms):
    cdef double v, e
    _inner(r, t, c, n_cut, em_terms, &v, &e)
    return v, e


def direct_block(double r, double s, double t, double x, long m_max, int n_min, int em_terms):
    cdef double total = 0.0, err = 0.0, c, w, v, e
    cdef long used = 0, m
    cdef int n_cut
    with nogil:
        for m in range(1, m_max + 1):
            c = m * x
            n_cut = <int>ceil(2.0 * c) + 1
            if n_cut < n_min:
                n_cut = n_min
            _inner(r, t, c, n_cut, em_terms, &v, &e)
            w = pow(<double>m, -s)
            total += w * v
            err += w * e
            used += n_cut
    return total, err, used


def polylog_series(double s, double[::1] y):
    cdef Py_ssize_t idx, n = y.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double q, total, zu, term, rho, grow = s
    cdef long u
    grow = -s if s < 0 else 0.0
    with nogil:
        for idx in range(n):
            q = exp(-y[idx])
            total = 0.0
            zu = 1.0
            u = 1
            while True:
                zu *= q
                term = zu * pow(<double>u, -s)
                total += term
                if term == 0.0:
                    break
                rho = q * pow(1.0 + 1.0 / u, grow)
                if rho < 1.0 and term * rho / (1.0 - rho) < 1e-17 * fabs(total):
                    break
                u += 1
                if u > 10000000:
                    break
            o[idx] = total
    return out
