import itertools
import random
from fractions import Fraction

import pytest

from mtzeta.errors import DomainError
from mtzeta.partialfrac import (
    a1_closed,
    a1_sum,
    a2_closed,
    a2_sum,
    alternating_poly_sum,
    case1_coefficient,
    cas_identity_lhs,
    cas_identity_rhs,
    numerator_polynomial,
    pf_decompose,
    pf_numeric_check,
    pf_verify_polynomial,
)


def _terms(table):
    return {(term.n_power, term.y_power, term.shifted_power): term.coefficient for term in table.nonzero_terms()}


def test_decompose_one_one():
    # 1/(n(n+y)) = 1/(ny) - 1/(y(n+y))
    assert _terms(pf_decompose(1, 1)) == {(0, 1, 1): -1, (1, 1, 0): 1}


def test_decompose_zero_one():
    table = pf_decompose(0, 1)
    assert _terms(table) == {(0, 0, 1): 1}
    assert table.i_terms == ()


def test_decompose_two_one():
    table = pf_decompose(2, 1)
    assert _terms(table) == {(0, 2, 1): 1, (2, 1, 0): 1, (1, 2, 0): -1}
    assert table.evaluate(1, 1) == Fraction(1, 2)


def test_decompose_index_ranges():
    table = pf_decompose(3, 5)
    assert [term.index for term in table.j_terms] == list(range(5))
    assert [term.index for term in table.i_terms] == list(range(3))


@pytest.mark.parametrize("r, t", [(0, 0), (-1, 2), (1.5, 1)])
def test_decompose_rejects(r, t):
    with pytest.raises(DomainError):
        pf_decompose(r, t)


@pytest.mark.parametrize("r, t", [(3, 4), (0, 1), (5, 5), (1, 0), (8, 8)])
def test_verify_polynomial(r, t):
    assert pf_verify_polynomial(r, t)


def test_verify_polynomial_full_grid():
    assert all(pf_verify_polynomial(r, t) for r in range(9) for t in range(9) if r + t >= 1)


def _exact_rhs(r, t, n, y):
    # independent oracle: the two sums of the decomposition written out in rationals
    from math import comb

    def c(top, k):
        return 1 if (top, k) == (-1, 0) else comb(top, k)

    out = sum(Fraction((-1) ** r * c(j + r - 1, j)) / (y ** (j + r) * (n + y) ** (t - j)) for j in range(t))
    out += sum(Fraction((-1) ** i * c(i + t - 1, i)) / (n ** (r - i) * y ** (t + i)) for i in range(r))
    return out


@pytest.mark.parametrize("r, t", [(2, 3), (4, 1), (0, 6), (7, 2)])
def test_table_matches_oracle_at_rational_points(r, t):
    table = pf_decompose(r, t)
    for n, y in [(Fraction(3, 2), Fraction(7, 10)), (Fraction(5), Fraction(1, 9)), (Fraction(2, 7), Fraction(11))]:
        lhs = 1 / (n ** r * (n + y) ** t)
        assert table.evaluate(n, y) == lhs
        assert _exact_rhs(r, t, n, y) == lhs


def test_numerator_polynomial_rejects_perturbation():
    # the check really looks at every coefficient
    A = numerator_polynomial(3, 2)
    A[1][4] += 1
    target = [[0] * 6 for _ in range(6)]
    target[0][5] = 1
    assert A != target


@pytest.mark.parametrize("r, t, n, y, tol", [
    (2, 3, 1.5, 0.7, 1e-13),
    (1, 1, 1.0, 1.0, 1e-15),
    (4, 2, 10.0, 0.01, None),
])
def test_numeric_check(r, t, n, y, tol):
    rep = pf_numeric_check(r, t, n, y)
    assert rep.passed
    if tol is not None:
        assert rep.residual <= tol


def test_float_summation_cancels_for_small_y():
    # summing the table in floats loses everything when y << n
    assert not pf_numeric_check(4, 2, 10.0, 0.01, exact=False).passed
    assert pf_numeric_check(4, 2, 10.0, 0.01, exact=True).passed


def test_numeric_check_random_grid():
    rng = random.Random(7)
    for _ in range(100):
        r, t = rng.randint(0, 8), rng.randint(0, 8)
        if r + t == 0:
            continue
        n, y = rng.uniform(0.1, 20.0), rng.uniform(0.01, 20.0)
        rep = pf_numeric_check(r, t, n, y)
        assert rep.residual <= 1e-12 * abs(rep.lhs)


def test_numeric_check_rejects_nonpositive():
    with pytest.raises(DomainError):
        pf_numeric_check(1, 1, -1.0, 1.0)


@pytest.mark.parametrize("a", range(1, 7))
@pytest.mark.parametrize("t", range(0, 6))
def test_alternating_sum_vanishes(a, t):
    assert alternating_poly_sum(a, t) == 0


def _valid_rta(limit=10):
    for r in range(1, limit):
        for t in range(1, limit - r + 1):
            for a in range(r, r + t):
                yield r, t, a


def test_case1_coefficients_vanish():
    assert all(case1_coefficient(r, t, a) == 0
               for r, t in itertools.product(range(1, 10), repeat=2) if r + t <= 10
               for a in range(1, r))


def test_a1_a2_closed_forms_and_cancellation():
    for r, t, a in _valid_rta():
        assert a1_sum(r, t, a) == a1_closed(r, t, a)
        assert a2_sum(r, t, a) == a2_closed(r, t, a)
        assert a1_sum(r, t, a) + a2_sum(r, t, a) == 0


def test_computer_algebra_identity_recertified():
    assert all(cas_identity_lhs(r, t, a) == cas_identity_rhs(r, t, a) for r, t, a in _valid_rta())
