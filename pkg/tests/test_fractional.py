import math

import numpy as np
import pytest

from hypfrac.expressions import (
    Interval,
    X,
    add,
    build_exp,
    compose_affine,
    constant,
    cosh_centered,
    power_of,
    scaled,
)
from hypfrac.fractional import (
    Family,
    FracParams,
    Side,
    exp_left,
    exp_right,
    exp_unit_left,
    fractional_integral,
    rl_left,
    rl_monomial_left,
    rl_right,
)

ONE = constant(1.0)


def shifted_monomial(k, a):
    return power_of(compose_affine(X, 1.0, -a), float(k))


def test_rl_left_examples():
    I = Interval(0.0, 1.0)
    assert rl_left(ONE, I, 0.5, 1.0) == pytest.approx(2.0 / math.sqrt(math.pi),
                                                      rel=1e-11)
    assert rl_left(ONE, I, 1.0, 1.0) == pytest.approx(1.0, rel=1e-12)
    assert rl_left(X, I, 0.5, 1.0) == pytest.approx(
        math.gamma(2.0) / math.gamma(2.5), rel=1e-11)


def test_rl_right_examples():
    I = Interval(0.0, 1.0)
    assert rl_right(ONE, I, 0.5, 0.0) == pytest.approx(2.0 / math.sqrt(math.pi),
                                                       rel=1e-11)
    assert rl_right(ONE, I, 1.0, 0.0) == pytest.approx(1.0, rel=1e-12)
    one_minus_x = add(constant(1.0), scaled(-1.0, X))
    assert rl_right(one_minus_x, I, 0.5, 0.0) == pytest.approx(
        math.gamma(2.0) / math.gamma(2.5), rel=1e-11)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.5])
@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_rl_monomial_oracle(alpha, k):
    a, b = 0.3, 1.9
    I = Interval(a, b)
    f = shifted_monomial(k, a)
    for t in (0.8, b):
        expected = rl_monomial_left(k, a, alpha, t)
        assert rl_left(f, I, alpha, t) == pytest.approx(expected, rel=1e-9)


def test_exp_left_examples():
    I = Interval(0.0, 1.0)
    assert exp_left(ONE, I, 0.5, 1.0) == pytest.approx(2.0 * (1 - math.exp(-1)),
                                                       rel=1e-12)
    assert exp_left(ONE, I, 0.9, 0.0) == 0.0  # empty integral at t == a
    es = build_exp(1.0)
    assert exp_left(es, I, 0.5, 1.0) == pytest.approx(
        (math.e ** 2 - 1.0) / math.e, rel=1e-12)


def test_exp_right_examples():
    I = Interval(0.0, 1.0)
    assert exp_right(ONE, I, 0.5, 0.0) == pytest.approx(2.0 * (1 - math.exp(-1)),
                                                        rel=1e-12)
    assert exp_right(ONE, I, 0.5, 1.0) == 0.0  # empty integral at t == b
    em = build_exp(-1.0)
    assert exp_right(em, I, 0.5, 0.0) == pytest.approx(1.0 - math.exp(-2.0),
                                                       rel=1e-12)


def test_exp_unit_closed_form_matches():
    a, alpha, t = 0.2, 0.7, 1.4
    got = exp_left(ONE, Interval(a, 2.0), alpha, t)
    assert got == pytest.approx(exp_unit_left(a, alpha, t), rel=1e-12)


def test_linearity():
    I = Interval(0.0, 1.5)
    f = cosh_centered(1.2, 0.4)
    g = build_exp(-0.7)
    combo = add(scaled(2.5, f), scaled(-1.25, g))
    for op, t in ((rl_left, 1.5), (rl_right, 0.0)):
        lhs = op(combo, I, 0.6, t)
        rhs = 2.5 * op(f, I, 0.6, t) - 1.25 * op(g, I, 0.6, t)
        assert lhs == pytest.approx(rhs, rel=1e-10)
    for op, t in ((exp_left, 1.5), (exp_right, 0.0)):
        lhs = op(combo, I, 0.6, t)
        rhs = 2.5 * op(f, I, 0.6, t) - 1.25 * op(g, I, 0.6, t)
        assert lhs == pytest.approx(rhs, rel=1e-10)


def test_reflection():
    a, b = 0.25, 1.75
    I = Interval(a, b)
    f = add(cosh_centered(0.9, 0.5), scaled(0.4, build_exp(1.1)))
    reflected = compose_affine(f, -1.0, a + b)  # x -> f(a + b - x)
    for alpha in (0.5, 1.3):
        assert rl_left(f, I, alpha, b) == pytest.approx(
            rl_right(reflected, I, alpha, a), rel=1e-10)
    assert exp_left(f, I, 0.5, b) == pytest.approx(
        exp_right(reflected, I, 0.5, a), rel=1e-10)


def test_alpha_to_one_limit():
    from hypfrac.quadrature import integrate

    I = Interval(0.2, 1.4)
    f = add(cosh_centered(1.5, 0.8), build_exp(0.5))
    plain = integrate(f, I).value
    assert abs(rl_left(f, I, 1.0 - 1e-6, I.b) - plain) <= 1e-4


def test_validation_errors():
    I = Interval(0.0, 1.0)
    with pytest.raises(ValueError):
        FracParams(-1.0, Family.RL)
    with pytest.raises(ValueError, match="alpha must be positive for family rl"):
        FracParams(-1.0, Family.RL)
    with pytest.raises(ValueError):
        FracParams(1.0, Family.EXP)
    with pytest.raises(ValueError):
        rl_left(ONE, I, 0.5, 0.0)  # t == a is empty for the left operator
    with pytest.raises(ValueError):
        rl_right(ONE, I, 0.5, 1.0)
    with pytest.raises(ValueError):
        rl_left(ONE, I, 0.5, 1.5)  # outside the interval
    with pytest.raises(ValueError):
        fractional_integral(ONE, I, FracParams(0.5, Family.EXP), Side.LEFT, -0.1)
