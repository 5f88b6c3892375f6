"""Series of the form sum_m m^{-p} [psi^{(q)}(m x + a) - leading terms].

Used by the closed series form of Theta, the second-variable limits and the
Herglotz-type functions. The first N-1 terms are summed directly and the
rest is replaced by the large-argument expansion of psi^{(q)}(z + a),

    psi(z + a) ~ log z + sum_k (-1)^{k+1} B_k(a) / (k z^k),

differentiated q times, whose terms sum in closed form to Hurwitz zeta
values zeta(p + e, N) (and -zeta'(p, N) for the log term).
"""

import math
from fractions import Fraction
from functools import lru_cache

from mtzeta.errors import BudgetExceededError, DomainError
from mtzeta.specfun import bernoulli_poly, digamma, hurwitz_zeta, hurwitz_zeta_deriv, polygamma

__all__ = ["psi_asymptotic_terms", "psi_series"]

_Z0 = 24.0  # direct summation until m x >= _Z0
_KMAX = 40


@lru_cache(maxsize=128)
def psi_asymptotic_terms(q, a):
    """Terms of the large-z expansion of psi^{(q)}(z + a).

    Returns a tuple of (exponent, coefficient); exponent None marks the
    log z term (present only for q = 0).
    """
    a_exact = Fraction(a) if isinstance(a, int) else a
    out = []
    if q == 0:
        out.append((None, 1.0))
    else:
        out.append((q, float((-1) ** (q - 1) * math.factorial(q - 1))))
    for k in range(1, _KMAX + 1):
        bk = bernoulli_poly(k, a_exact)
        if bk == 0:
            continue
        ck = (-1) ** (k + 1) * bk / k
        if q:
            ck = ck * (-1) ** q * math.prod(range(k, k + q))
        out.append((k + q, float(ck)))
    return tuple(out)


def _leading(z, terms):
    acc = 0.0
    for e, c in terms:
        acc += c * (math.log(z) if e is None else z ** (-e))
    return acc


def psi_series(q, p, x, shift=1, drop=0, max_terms=10**7):
    """sum_{m>=1} m^{-p} [psi^{(q)}(m x + shift) - (first `drop` asymptotic terms)].

    shift must be 0 or 1 (the Bernoulli polynomial expansion is exact for
    any shift, but only these two are used). Raises DomainError when the
    remaining series diverges.
    """
    if x <= 0:
        raise DomainError("psi_series needs x > 0")
    terms = psi_asymptotic_terms(int(q), int(shift))
    dropped = terms[:drop]
    kept = terms[drop:]
    e0 = kept[0][0]
    if e0 is None:
        if not p > 1:
            raise DomainError("psi series diverges (log term with p <= 1)")
    elif not p + e0 > 1:
        raise DomainError("psi series diverges (p + leading exponent <= 1)")
    N = max(2, int(math.ceil(_Z0 / x)))
    if N > max_terms:
        raise BudgetExceededError(f"psi series needs {N} direct terms (cap {max_terms})")
    direct = []
    for m in range(1, N):
        z = m * x
        if q == 0:
            v = digamma(z + shift)
        else:
            v = polygamma(q, z + shift)
        if dropped:
            v -= _leading(z, dropped)
        direct.append(v * m ** (-p))
    total = math.fsum(direct)
    tail = 0.0
    scale = abs(total) + 1e-300
    for e, c in kept:
        if e is None:
            piece = c * (math.log(x) * hurwitz_zeta(p, N) - hurwitz_zeta_deriv(p, N))
        else:
            piece = c * x ** (-e) * hurwitz_zeta(p + e, N)
        tail += piece
        if e is not None and abs(piece) < 1e-19 * scale:
            break
    return total + tail
