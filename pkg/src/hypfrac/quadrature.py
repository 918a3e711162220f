"""Adaptive quadrature on finite intervals with endpoint-singularity support.

The panel rule is the embedded 7-point Gauss / 15-point Kronrod pair; the
difference between the two estimates is the panel error.  Adaptivity is by
bisection: every round evaluates all still-active panels in one vectorized
batch, accepts those whose error fits their share of the budget (or is at
the round-off floor of the panel), and bisects the rest.  Integrands are
called with a flat numpy array and must return an array of the same shape;
expression trees from :mod:`hypfrac.expressions` satisfy this directly.

Integrable algebraic endpoint weights ``(x-a)**(alpha-1)`` and
``(b-x)**(alpha-1)`` with ``alpha < 1`` are removed exactly by the power
substitution ``x = a + u**(1/alpha)`` (mirrored on the right), which turns
the weighted integral into a plain one with a bounded integrand; for
``alpha >= 1`` the weight is continuous and is integrated directly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .expressions import Interval

# 7/15 Gauss-Kronrod abscissae and weights on [-1, 1] (positive half).
_XGK_HALF = np.array([
    0.9914553711208126392068546975263285,
    0.9491079123427585245261896840478513,
    0.8648644233597690727897127886409262,
    0.7415311855993944398638647732807884,
    0.5860872354676911302941448382587296,
    0.4058451513773971669066064120769615,
    0.2077849550078984676006894037732449,
    0.0,
])
_WGK_HALF = np.array([
    0.0229353220105292249637320080589695,
    0.0630920926299785532907006631892042,
    0.1047900103222501838398763225415180,
    0.1406532597155259187451895905102379,
    0.1690047266392679028265834265985503,
    0.1903505780647854099132564024210137,
    0.2044329400752988924141619992346491,
    0.2094821410847278280129991748917143,
])
_WG_HALF = np.array([
    0.1294849661688696932706114326790820,
    0.2797053914892766679014677714237796,
    0.3818300505051189449503697754889751,
    0.4179591836734693877551020408163265,
])

_XGK = np.concatenate([-_XGK_HALF[:7], _XGK_HALF[::-1]])  # 15 nodes ascending
_WGK = np.concatenate([_WGK_HALF[:7], _WGK_HALF[::-1]])
_WG = np.zeros(15)
_WG[1:14:2] = np.concatenate([_WG_HALF[:3], _WG_HALF[::-1]])  # Gauss nodes sit at odd slots

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class QuadConfig:
    """Accuracy targets and the subdivision budget."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 2000

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    subdivisions_used: int
    converged: bool = True

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be nonnegative")


class Endpoint(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


DEFAULT_QUAD = QuadConfig()


def _panels(f, lo, hi):
    """Kronrod value, error estimate and L1 estimate for a batch of panels."""
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    xs = c[:, None] + h[:, None] * _XGK[None, :]
    ys = np.asarray(f(xs.ravel()), dtype=float).reshape(xs.shape)
    k = h * (ys @ _WGK)
    g = h * (ys @ _WG)
    l1 = h * (np.abs(ys) @ _WGK)
    return k, np.abs(k - g), l1


def integrate(f, interval: Interval, cfg: QuadConfig = DEFAULT_QUAD) -> QuadResult:
    """Integrate a vectorized callable over [a, b].

    The result is flagged ``converged=False`` when the subdivision budget
    ran out before the error budget was met; the best value found is still
    returned.
    """
    a, b = interval.a, interval.b
    span = b - a
    lo = np.array([a])
    hi = np.array([b])
    done_val = 0.0
    done_err = 0.0
    splits = 0
    converged = True
    while True:
        k, err, l1 = _panels(f, lo, hi)
        total = done_val + float(k.sum())
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        share = (hi - lo) / span
        accept = (err <= tol * share) | (err <= 100.0 * _EPS * l1)
        # panels narrower than the float grid cannot be refined further
        floor = (hi - lo) <= 64.0 * _EPS * max(abs(a), abs(b), span)
        if np.any(floor & ~accept):
            converged = False
            accept = accept | floor
        if np.all(accept):
            done_val += float(k.sum())
            done_err += float(err.sum())
            break
        done_val += float(k[accept].sum())
        done_err += float(err[accept].sum())
        lo, hi = lo[~accept], hi[~accept]
        if splits + lo.size > cfg.max_subdivisions:
            krem, erem, _ = k[~accept], err[~accept], None
            done_val += float(krem.sum())
            done_err += float(erem.sum())
            converged = False
            break
        splits += lo.size
        mid = 0.5 * (lo + hi)
        lo = np.concatenate([lo, mid])
        hi = np.concatenate([mid, hi])
        order = np.argsort(lo, kind="stable")
        lo, hi = lo[order], hi[order]
    return QuadResult(done_val, done_err, splits, converged)


def integrate_singular(
    g,
    interval: Interval,
    alpha: float,
    endpoint: Endpoint,
    cfg: QuadConfig = DEFAULT_QUAD,
) -> QuadResult:
    """Integrate g(x) * (x-a)**(alpha-1) (LEFT) or g(x) * (b-x)**(alpha-1) (RIGHT).

    ``g`` must be smooth on [a, b]; ``alpha > 0``.  For ``alpha < 1`` the
    weight is removed by the power substitution, for ``alpha >= 1`` the
    weighted integrand is handed to :func:`integrate` unchanged.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    a, b = interval.a, interval.b
    if alpha == 1.0:
        return integrate(g, interval, cfg)
    if alpha > 1.0:
        if endpoint is Endpoint.LEFT:
            f = lambda x: np.asarray(g(x)) * np.power(x - a, alpha - 1.0)
        else:
            f = lambda x: np.asarray(g(x)) * np.power(b - x, alpha - 1.0)
        return integrate(f, interval, cfg)
    span = (b - a) ** alpha
    inv = 1.0 / alpha
    if endpoint is Endpoint.LEFT:
        f = lambda u: np.asarray(g(np.minimum(a + np.power(u, inv), b))) * inv
    else:
        f = lambda u: np.asarray(g(np.maximum(b - np.power(u, inv), a))) * inv
    return integrate(f, Interval(0.0, span), cfg)


def gauss_kronrod_nodes():
    """The 15 Kronrod abscissae and both weight vectors on [-1, 1]."""
    return _XGK.copy(), _WGK.copy(), _WG.copy()
