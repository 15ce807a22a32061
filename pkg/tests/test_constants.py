from decimal import Decimal, getcontext
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ptcnum.constants import ArctanPlan, arctan_inv, arctan_partial_sum, arctan_terms, pi
from ptcnum.core import to_decimal
from ptcnum.kernel import counting
from ptcnum.reference import PI_100, reference_pi


def test_term_counts():
    assert arctan_terms(5, 10 ** 6) == 4
    assert arctan_terms(239, 10 ** 6) == 1
    assert arctan_terms(5, 1) == 0


@given(st.integers(2, 300), st.integers(1, 10 ** 30))
def test_term_count_minimal(k, n):
    m = arctan_terms(k, n)
    assert ArctanPlan.tail_ok(k, n, m)
    if m:
        assert not ArctanPlan.tail_ok(k, n, m - 1)


def test_partial_sums_exact():
    assert arctan_partial_sum(5, 2) == F(74, 375)
    assert arctan_partial_sum(5, 0) == 0
    for k in (2, 5, 239):
        for m in range(1, 9):
            naive = sum(F((-1) ** i, (2 * i + 1) * k ** (2 * i + 1)) for i in range(m))
            assert arctan_partial_sum(k, m) == naive


def _pi_bracket():
    lo = reference_pi(100)
    return lo, lo + F(1, 10 ** 100)


def test_pi_examples():
    lo, hi = _pi_bracket()
    for n in (1, 10, 1000, 10 ** 20):
        v = pi().eval(n).re
        assert v - F(1, n) <= lo and hi <= v + F(1, n)
    s = to_decimal(pi(), 30)
    assert s == "3.141592653589793238462643383280"  # nearest, not truncated
    assert abs(F(s) - lo) <= F(1, 10 ** 30)


def test_arctan_inv_against_decimal_series():
    getcontext().prec = 60
    x = Decimal(1) / Decimal(239)
    ref = sum((-1) ** i * x ** (2 * i + 1) / (2 * i + 1) for i in range(20))
    v = arctan_inv(239).eval(10 ** 40).re
    assert abs(Decimal(v.numerator) / Decimal(v.denominator) - ref) <= Decimal(10) ** -40


def test_arctan_inv_validates():
    with pytest.raises(ValueError):
        arctan_inv(1)


def test_pi_stored_constant_matches_agm():
    # Gauss-Legendre iteration in decimal, independent of the Machin path
    getcontext().prec = 120
    a, b, t, p = Decimal(1), Decimal(1) / Decimal(2).sqrt(), Decimal(1) / 4, Decimal(1)
    for _ in range(10):
        a, b, t, p = (a + b) / 2, (a * b).sqrt(), t - p * ((a - b) / 2) ** 2, 2 * p
    agm = (a + b) ** 2 / (4 * t)
    assert str(agm)[:102] == PI_100


def test_pi_ops_are_counted():
    with counting() as c:
        pi().eval(10 ** 8)
    assert 0 < c.rational_ops < 1000
