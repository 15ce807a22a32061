from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ptcnum.kernel import (
    GaussianRational as G,
    OpCounter,
    RoundingAdjustment,
    counting,
    dyadic_round,
    iroot,
    root_lower,
    root_upper,
    round_nearest,
    round_to_multiple,
    sqrt_lower,
    sqrt_upper,
    tally,
)

fractions = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)
positive = st.fractions(min_value=0, max_value=10**9, max_denominator=10**6)


def test_round_nearest_ties_to_even():
    assert round_nearest(F(5, 2)) == 2
    assert round_nearest(F(7, 2)) == 4
    assert round_nearest(F(-5, 2)) == -2
    assert round_nearest(F(7, 3)) == 2


@given(fractions)
def test_round_nearest_within_half(q):
    assert abs(q - round_nearest(q)) <= F(1, 2)


@given(st.integers(-10**9, 10**9), st.integers(1, 50))
def test_round_to_multiple(v, d):
    w, adj = round_to_multiple(v, d)
    assert v + adj.value == w * d
    assert abs(adj.value) <= d // 2


def test_round_to_multiple_by_three():
    assert round_to_multiple(7, 3)[0] == 2
    assert round_to_multiple(8, 3)[0] == 3
    assert round_to_multiple(-7, 3)[0] == -2


def test_rounding_adjustment_checks_bound():
    with pytest.raises(ValueError):
        RoundingAdjustment(2, F(1))


def test_dyadic_round():
    assert dyadic_round(F(1, 3), 4) == F(5, 16)


@given(st.integers(0, 10**40), st.integers(1, 7))
def test_iroot_is_floor(n, k):
    r = iroot(n, k)
    assert r ** k <= n < (r + 1) ** k


def test_sqrt_two_enclosure():
    tol = F(1, 64)
    lo, hi = sqrt_lower(2, tol), sqrt_upper(2, tol)
    assert lo ** 2 <= 2 <= hi ** 2
    assert hi - lo <= tol
    assert hi == F(91, 64)


def test_exact_roots_are_exact():
    assert sqrt_upper(F(9, 4), F(1, 10)) == F(3, 2)
    assert root_lower(F(8, 27), 3, F(1, 10)) == F(2, 3)


@given(positive, st.integers(1, 6), st.integers(1, 80))
def test_root_enclosures_are_sound(q, k, bits):
    tol = F(1, 2 ** bits)
    lo, hi = root_lower(q, k, tol), root_upper(q, k, tol)
    assert lo >= 0
    assert lo ** k <= q <= hi ** k
    assert hi - lo <= tol


def test_root_of_negative_rejected():
    with pytest.raises(ValueError):
        sqrt_upper(-1, F(1, 2))


def test_gaussian_arithmetic():
    a, b = G(1, 2), G(F(1, 2), -1)
    assert a + b == G(F(3, 2), 1)
    assert a - b == G(F(1, 2), 3)
    assert a * b == G(F(5, 2), 0)
    assert (a / b) * b == a
    assert a ** 3 == a * a * a
    assert a.conjugate() == G(1, -2)
    assert a.abs2() == 5
    assert str(G(1, -2)) == "1 - 2i"
    with pytest.raises(ZeroDivisionError):
        a / G(0)


def test_gaussian_is_immutable_and_hashable():
    a = G(1, 2)
    with pytest.raises(AttributeError):
        a.re = F(0)
    assert hash(G(3)) == hash(F(3))
    assert len({G(1, 2), G(1, 2)}) == 1


@given(fractions, fractions, fractions, fractions)
def test_gaussian_field_laws(a, b, c, d):
    x, y = G(a, b), G(c, d)
    assert x * y == y * x
    assert (x + y) - y == x
    if y:
        assert (x / y) * y == x


def test_counting_context():
    with counting() as c:
        G(1) + G(2)
        G(1) * G(3)
    assert c.rational_ops == 2
    assert c.bit_ops_proxy > 0
    tally(1)  # no active counter: no effect
    outer = OpCounter()
    with counting(outer):
        with counting() as inner:
            G(1) + G(1)
        G(1) + G(1)
    assert inner.rational_ops == 1 and outer.rational_ops == 1
