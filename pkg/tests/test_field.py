import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from _support import random_tree, within, worst_case
from ptcnum import field
from ptcnum.core import PTCNumber, const
from ptcnum.field import (
    InversionWitness,
    NonRealOperand,
    PossiblyZero,
    ProductScaling,
    add,
    combine_complex,
    divide,
    im,
    invert,
    multiply,
    negate,
    power,
    re,
    scale,
    subtract,
)
from ptcnum.kernel import GaussianRational as G

reals = st.fractions(min_value=-8, max_value=8, max_denominator=30)
gaussians = st.builds(G, reals, reals)
precisions = st.sampled_from([1, 2, 3, 10, 1000, 10 ** 6, 10 ** 12])


def test_sum_example():
    third = const(F(1, 3))
    assert within(add(third, third).eval(3), G(F(2, 3)), 3)


@given(gaussians, gaussians, precisions)
def test_add_sub_worst_case(a, b, n):
    x, y = worst_case(a), worst_case(b)
    assert within(add(x, y).eval(n), a + b, n)
    assert within(subtract(x, y).eval(n), a - b, n)


@given(gaussians, gaussians, precisions)
def test_multiply_worst_case(a, b, n):
    assert within(multiply(worst_case(a), worst_case(b)).eval(n), a * b, n)


@given(gaussians, precisions)
def test_invert_worst_case(a, n):
    if not a:
        return
    assert within(invert(worst_case(a)).eval(n), 1 / a, n)


@given(gaussians, st.integers(-7, 7), precisions)
def test_scale_negate(a, k, n):
    x = worst_case(a)
    assert within(scale(x, k).eval(n), a * k, n)
    assert within(negate(x).eval(n), -a, n)


@given(gaussians, st.integers(0, 4), precisions)
@settings(max_examples=40)
def test_power(a, k, n):
    assert within(power(worst_case(a), k).eval(n), a ** k, n)


@given(gaussians, precisions)
def test_re_im(a, n):
    x = worst_case(a)
    assert within(re(x).eval(n), G(a.re), n)
    assert within(im(x).eval(n), G(a.im), n)
    assert re(x).real and im(x).real


def test_product_scaling_constant():
    x, y = const(3), const(-5)
    assert ProductScaling.for_operands(x, y).c == 12
    with pytest.raises(ValueError):
        ProductScaling(3)


def test_inversion_witness():
    w = InversionWitness.search(const(F(1, 2)), 2 ** 10)
    assert w.k == 4
    assert w.p_coeffs == (32, 4)
    assert w.p(3) == 100


def test_possibly_zero():
    zero = subtract(const(1), const(1))
    z = invert(zero, 1000)
    with pytest.raises(PossiblyZero) as exc:
        z.eval(1)
    assert exc.value.cap == 1000


def test_tiny_nonzero_inverts_with_large_cap():
    tiny = const(F(1, 10 ** 9))
    with pytest.raises(PossiblyZero):
        invert(tiny, 2 ** 20).eval(1)
    assert within(invert(tiny).eval(10), G(10 ** 9), 10)


def test_combine_requires_real_parts():
    with pytest.raises(NonRealOperand):
        combine_complex(const(G(0, 1)), const(1))


@given(reals, reals, precisions)
def test_combine_complex(a, b, n):
    z = combine_complex(worst_case(a), worst_case(b))
    assert within(z.eval(n), G(a, b), n)


def test_divide_example():
    z = divide(const(G(1, 2)), const(3))
    assert within(z.eval(10 ** 6), G(F(1, 3), F(2, 3)), 10 ** 6)


def test_operator_sugar():
    x, y = const(F(1, 2)), const(G(0, 1))
    v = ((x + y) * 3 - x / y + 1) ** 2
    exact = ((G(F(1, 2), 1) * 3 - G(F(1, 2)) / G(0, 1) + 1)) ** 2
    assert within(v.eval(1000), exact, 1000)
    assert within((1 - x).eval(7), G(F(1, 2)), 7)
    assert within((2 / x).eval(7), G(4), 7)


def test_random_trees_smoke():
    rng = random.Random(7)
    for _ in range(40):
        v, z, text = random_tree(rng, 3)
        for n in (1, 2, 10, 1000):
            assert within(z.eval(n), v, n), text


def test_subexpressions_are_shared():
    calls = []

    def oracle(n):
        calls.append(n)
        return n, 0

    x = PTCNumber(oracle, real=True)
    y = add(x, x)
    y.eval(10)
    # one query at 2 * 4n, shared by both operands
    assert calls == [80]
