"""Fractional integral operators on finite intervals.

Two families:

* ``rl`` - Riemann-Liouville: kernel ``(t-s)**(alpha-1) / Gamma(alpha)``
  (left) and the mirrored ``(s-t)**(alpha-1) / Gamma(alpha)`` (right),
  order ``alpha > 0``; singular at the evaluation point for ``alpha < 1``.
* ``exp`` - bounded exponential kernel
  ``exp(-(1-alpha)/alpha * distance) / alpha``, order ``alpha`` in (0, 1).

The closed forms used as test oracles: for ``f(s) = (s-a)**k`` the left
Riemann-Liouville integral at ``t`` is
``Gamma(k+1)/Gamma(k+1+alpha) * (t-a)**(k+alpha)``; for ``f == 1`` the left
exponential-kernel integral at ``t`` is ``(1 - exp(-rho)) / (1-alpha)`` with
``rho = (1-alpha)*(t-a)/alpha``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .expressions import Interval
from .quadrature import Endpoint, QuadConfig, QuadResult, integrate, integrate_singular

# Operators feed inequality slacks checked at 1e-8, so they run much tighter
# than the general-purpose quadrature defaults.
OPERATOR_QUAD = QuadConfig(abs_tol=1e-13, rel_tol=1e-12, max_subdivisions=4000)


class Family(enum.Enum):
    RL = "rl"
    EXP = "exp"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class FracParams:
    alpha: float
    family: Family

    def __post_init__(self):
        if self.family is Family.RL:
            if not self.alpha > 0:
                raise ValueError("alpha must be positive for family rl")
        elif not 0 < self.alpha < 1:
            raise ValueError("alpha must be in (0, 1) for family exp")


_ZERO = QuadResult(0.0, 0.0, 0)


def fractional_integral(
    f,
    interval: Interval,
    params: FracParams,
    side: Side,
    t: float,
    cfg: QuadConfig = OPERATOR_QUAD,
) -> QuadResult:
    """Evaluate one of the four operators at the point ``t``."""
    a, b = interval.a, interval.b
    if not a <= t <= b:
        raise ValueError(f"evaluation point {t} outside [{a}, {b}]")
    alpha = params.alpha
    if params.family is Family.RL:
        if side is Side.LEFT:
            if t == a:
                raise ValueError("left operator needs t > a")
            res = integrate_singular(f, Interval(a, t), alpha, Endpoint.RIGHT, cfg)
        else:
            if t == b:
                raise ValueError("right operator needs t < b")
            res = integrate_singular(f, Interval(t, b), alpha, Endpoint.LEFT, cfg)
        scale = 1.0 / math.gamma(alpha)
    else:
        lam = (1.0 - alpha) / alpha
        if side is Side.LEFT:
            if t == a:
                return _ZERO
            kernel = lambda s: np.exp(-lam * (t - s)) * np.asarray(f(s))
            res = integrate(kernel, Interval(a, t), cfg)
        else:
            if t == b:
                return _ZERO
            kernel = lambda s: np.exp(-lam * (s - t)) * np.asarray(f(s))
            res = integrate(kernel, Interval(t, b), cfg)
        scale = 1.0 / alpha
    return QuadResult(
        scale * res.value,
        scale * res.error_estimate,
        res.subdivisions_used,
        res.converged,
    )


def rl_left(f, interval: Interval, alpha: float, t: float,
            cfg: QuadConfig = OPERATOR_QUAD) -> float:
    return fractional_integral(f, interval, FracParams(alpha, Family.RL),
                               Side.LEFT, t, cfg).value


def rl_right(f, interval: Interval, alpha: float, t: float,
             cfg: QuadConfig = OPERATOR_QUAD) -> float:
    return fractional_integral(f, interval, FracParams(alpha, Family.RL),
                               Side.RIGHT, t, cfg).value


def exp_left(f, interval: Interval, alpha: float, t: float,
             cfg: QuadConfig = OPERATOR_QUAD) -> float:
    return fractional_integral(f, interval, FracParams(alpha, Family.EXP),
                               Side.LEFT, t, cfg).value


def exp_right(f, interval: Interval, alpha: float, t: float,
              cfg: QuadConfig = OPERATOR_QUAD) -> float:
    return fractional_integral(f, interval, FracParams(alpha, Family.EXP),
                               Side.RIGHT, t, cfg).value


def rl_monomial_left(k: int, a: float, alpha: float, t: float) -> float:
    """Closed form of the left RL integral of (s-a)**k, the operator oracle."""
    return math.gamma(k + 1) / math.gamma(k + 1 + alpha) * (t - a) ** (k + alpha)


def exp_unit_left(a: float, alpha: float, t: float) -> float:
    """Closed form of the left exponential-kernel integral of f == 1."""
    rho = (1.0 - alpha) * (t - a) / alpha
    return -math.expm1(-rho) / (1.0 - alpha)
