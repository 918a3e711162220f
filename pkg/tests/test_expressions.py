import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypfrac.expressions import (
    DomainError,
    Interval,
    X,
    add,
    build_exp,
    build_hyperbolic,
    build_power,
    compose_affine,
    cosh_centered,
    deriv,
    deriv2,
    scaled,
    Cosh,
    Exp,
    Sinh,
)


def test_eval_examples():
    assert Cosh(X).eval(0.0) == 1.0
    assert build_power(2.0).eval(3.0) == 9.0
    assert build_exp(2.0).eval(1.0) == pytest.approx(math.e ** 2, rel=1e-15)
    assert build_hyperbolic(1.0, 0.0, 1.0).eval(0.0) == 1.0
    assert build_power(2.0).eval(math.sqrt(2.0)) == pytest.approx(2.0, rel=1e-15)
    assert build_exp(2.0).eval(0.0) == 1.0


def test_eval_scalar_vs_array():
    f = add(build_exp(1.5), scaled(0.5, Sinh(X)))
    xs = np.linspace(-1, 1, 7)
    arr = f.eval(xs)
    assert arr.shape == xs.shape
    for x, v in zip(xs, arr):
        assert f.eval(float(x)) == pytest.approx(v, rel=1e-15)
    assert isinstance(f.eval(0.3), float)


def test_constant_broadcasts_over_arrays():
    f = add(build_exp(0.0))  # folds to the constant 1
    out = f.eval(np.linspace(0, 1, 5))
    assert out.shape == (5,)
    assert np.all(out == 1.0)


def test_second_derivative_identities():
    xs = np.linspace(-2.0, 2.0, 101)
    for p in (0.5, 1.0, 3.0):
        f = cosh_centered(p, 0.0)
        residual = deriv2(f).eval(xs) - p * p * f.eval(xs)
        assert np.max(np.abs(residual)) < 1e-12 * max(1.0, p * p * np.max(f.eval(xs)))
    for mu in (0.5, 2.0):
        g = build_exp(mu)
        residual = deriv2(g).eval(xs) - mu * mu * g.eval(xs)
        assert np.max(np.abs(residual)) < 1e-12 * mu * mu * np.max(g.eval(xs))


def test_power_second_derivative_closed_form():
    xs = np.linspace(0.2, 3.0, 50)
    for r in (0.5, 1.5, 2.0, 3.0, -1.0):
        f = build_power(r)
        expected = r * (r - 1.0) * xs ** (r - 2.0)
        assert deriv2(f).eval(xs) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_deriv2_equals_deriv_of_deriv_by_value():
    f = add(cosh_centered(2.0, 0.3), scaled(0.7, build_power(3.0)),
            build_exp(-1.2))
    xs = np.linspace(0.1, 2.0, 101)
    assert deriv(deriv(f)).eval(xs) == pytest.approx(deriv2(f).eval(xs), rel=1e-12)


@pytest.mark.parametrize("f", [
    cosh_centered(1.3, 0.4),
    build_exp(1.7),
    build_exp(-0.6),
    build_power(2.5),
    build_hyperbolic(1.2, -0.4, 0.9),
    add(scaled(0.3, Cosh(X)), scaled(1.1, Exp(X))),
])
def test_derivative_matches_centered_difference(f):
    # 101-point grid, h = 1e-5, relative tolerance 1e-6*(1 + |f'|)
    xs = np.linspace(0.2, 1.8, 101)
    h = 1e-5
    fd = (f.eval(xs + h) - f.eval(xs - h)) / (2 * h)
    exact = deriv(f).eval(xs)
    assert np.all(np.abs(exact - fd) <= 1e-6 * (1.0 + np.abs(exact)))


@given(c1=st.floats(-5, 5), c2=st.floats(-5, 5),
       x=st.floats(0.1, 2.0))
@settings(max_examples=100, deadline=None)
def test_linearity(c1, c2, x):
    f1 = cosh_centered(1.2, 0.5)
    f2 = build_power(2.0)
    combo = add(scaled(c1, f1), scaled(c2, f2))
    direct = c1 * f1.eval(x) + c2 * f2.eval(x)
    assert combo.eval(x) == pytest.approx(direct, rel=1e-12, abs=1e-12)


def test_large_argument_hyperbolics_do_not_overflow():
    f = Cosh(X)
    g = Sinh(X)
    for x in (700.0, -700.0):
        assert math.isfinite(f.eval(x))
        assert math.isfinite(g.eval(x))
    assert f.eval(700.0) == pytest.approx(math.cosh(700.0), rel=1e-15)


def test_power_domain_errors():
    with pytest.raises(DomainError):
        build_power(0.5).eval(-1.0)
    with pytest.raises(DomainError):
        build_power(2.5).eval(np.array([0.5, -0.1]))
    with pytest.raises(DomainError):
        build_power(-1.0).eval(0.0)
    # integer powers accept negative bases
    assert build_power(3.0).eval(-2.0) == -8.0


def test_affine_composition_folding():
    f = compose_affine(compose_affine(Exp(X), 2.0, 1.0), 3.0, 0.5)
    # exp(2*(3x + 0.5) + 1) = exp(6x + 2)
    assert f.eval(0.25) == pytest.approx(math.exp(6 * 0.25 + 2.0), rel=1e-14)


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(1.0, 1.0)
    with pytest.raises(ValueError):
        Interval(2.0, 1.0)
    with pytest.raises(ValueError):
        Interval(0.0, math.inf)
    I = Interval(-1.0, 3.0)
    assert I.mid == 1.0
    assert I.length == 4.0
