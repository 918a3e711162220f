"""Hyperbolic p-convexity: chord majorants, four verdict methods, families.

A function is hyperbolic p-convex on an interval when, on every closed
subinterval, it lies below the hyperbolic chord ``A*cosh(p*x) + B*sinh(p*x)``
matching it at the subinterval's endpoints.  Equivalent characterizations
implemented here for C^2 functions:

* chord test        - f(x) <= H(x; a', b', f) on all grid subintervals;
* curvature test    - f''(x) - p**2 * f(x) >= 0;
* gradient test     - f(y) >= f(x)*cosh(p*(y-x)) + f'(x)/p * sinh(p*(y-x));
* accumulation test - phi(x) = f'(x) - p**2 * integral_a^x f is nondecreasing.

``p == 0`` selects the classical-convexity limit of each test (straight
chord, ``f'' >= 0``, tangent-line inequality, ``phi = f'``).  Verdicts are
decided on a grid; violations are normalized by the magnitude of the
quantities compared, so pure boundary members of any amplitude classify as
BOUNDARY instead of drowning in round-off.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .expressions import (
    FuncExpr,
    Interval,
    build_hyperbolic,
    deriv,
    deriv2,
    line,
)
from .quadrature import QuadConfig, integrate

DEFAULT_GRID_N = 101
DEFAULT_TOL = 1e-9

_PHI_QUAD = QuadConfig(abs_tol=1e-13, rel_tol=1e-12, max_subdivisions=4000)


class Verdict(enum.Enum):
    CONVEX = "convex"
    CONCAVE = "concave"
    NEITHER = "neither"
    BOUNDARY = "boundary"


class Method(enum.Enum):
    CHORD = "chord"
    SECOND_ORDER = "second_order"
    GRADIENT = "gradient"
    PHI = "phi"


@dataclass(frozen=True)
class ConvexityReport:
    verdict: Verdict
    worst_violation: float
    witness_x: float
    method: Method

    @property
    def is_convex(self) -> bool:
        return self.verdict in (Verdict.CONVEX, Verdict.BOUNDARY)

    @property
    def is_concave(self) -> bool:
        return self.verdict in (Verdict.CONCAVE, Verdict.BOUNDARY)


def _c2_callables(f):
    """(value, first derivative, second derivative) as vectorized callables."""
    if isinstance(f, FuncExpr):
        d1 = deriv(f)
        d2 = deriv(d1)
        return f.eval, d1.eval, d2.eval
    return f.value, f.derivative, f.second_derivative


def _value_callable(f):
    return f.eval if isinstance(f, FuncExpr) else f.value


def _settle(conv_violation, conc_violation, tol, x_conv, x_conc, method):
    convex_ok = conv_violation <= tol
    concave_ok = conc_violation <= tol
    if convex_ok and concave_ok:
        worst = max(0.0, conv_violation, conc_violation)
        witness = x_conv if conv_violation >= conc_violation else x_conc
        return ConvexityReport(Verdict.BOUNDARY, worst, float(witness), method)
    if convex_ok:
        return ConvexityReport(Verdict.CONVEX, max(0.0, conv_violation),
                               float(x_conv), method)
    if concave_ok:
        return ConvexityReport(Verdict.CONCAVE, max(0.0, conc_violation),
                               float(x_conc), method)
    if conv_violation <= conc_violation:
        return ConvexityReport(Verdict.NEITHER, conv_violation, float(x_conv), method)
    return ConvexityReport(Verdict.NEITHER, conc_violation, float(x_conc), method)


# ---------------------------------------------------------------------------
# hyperbolic chord

def chord_majorant(f, interval: Interval, p: float) -> FuncExpr:
    """The A*cosh(px) + B*sinh(px) (or straight line when p == 0)
    interpolating f at both endpoints of the interval."""
    fa = _value_callable(f)(interval.a)
    fb = _value_callable(f)(interval.b)
    a, b = interval.a, interval.b
    if p == 0.0:
        slope = (fb - fa) / (b - a)
        return line(fa - slope * a, slope)
    mat = np.array([
        [math.cosh(p * a), math.sinh(p * a)],
        [math.cosh(p * b), math.sinh(p * b)],
    ])
    A, B = np.linalg.solve(mat, np.array([fa, fb]))
    return build_hyperbolic(float(A), float(B), p)


def _chord_weights(dn, dd, p):
    """sinh(p*dn) / sinh(p*dd) for 0 <= dn <= dd, stable for any p > 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.exp(p * (dn - dd)) * (np.expm1(-2.0 * p * dn)
                                        / np.expm1(-2.0 * p * dd))


def check_chord(f, interval: Interval, p: float, grid_n: int = DEFAULT_GRID_N,
                tol: float = DEFAULT_TOL) -> ConvexityReport:
    """Grid chord test over every subinterval pair drawn from the grid."""
    if grid_n < 3:
        raise ValueError("grid_n must be >= 3")
    p = abs(float(p))
    xs = interval.grid(grid_n)
    fv = _value_callable(f)(xs)
    n = grid_n
    idx = np.arange(n)
    valid = (idx[:, None, None] < idx[None, :, None]) & \
            (idx[None, :, None] < idx[None, None, :])
    # pairwise-difference tensors over triples (i, k, j): chord endpoints
    # x_i < x_j, probe point x_k between them
    d_kj = (xs[None, None, :] - xs[None, :, None])  # x_j - x_k, shape (1, n, n)
    d_ik = (xs[None, :, None] - xs[:, None, None])  # x_k - x_i, shape (n, n, 1)
    d_ij = (xs[None, None, :] - xs[:, None, None])  # x_j - x_i, shape (n, 1, n)
    with np.errstate(divide="ignore", invalid="ignore"):
        if p == 0.0:
            w_a = d_kj / d_ij
            w_b = d_ik / d_ij
        else:
            w_a = _chord_weights(d_kj, d_ij, p)
            w_b = _chord_weights(d_ik, d_ij, p)
        H = w_a * fv[:, None, None] + w_b * fv[None, None, :]
    excess = fv[None, :, None] - H  # > 0 violates convexity
    excess = np.where(valid, excess, -np.inf)
    scale = 1.0 + float(np.max(np.abs(fv)))
    conv_v = float(np.max(excess)) / scale
    i1 = np.unravel_index(np.argmax(excess), excess.shape)
    deficit = np.where(valid, -(fv[None, :, None] - H), -np.inf)
    conc_v = float(np.max(deficit)) / scale
    i2 = np.unravel_index(np.argmax(deficit), deficit.shape)
    return _settle(conv_v, conc_v, tol, xs[i1[1]], xs[i2[1]], Method.CHORD)


def check_second_order(f, interval: Interval, p: float,
                       grid_n: int = DEFAULT_GRID_N,
                       tol: float = DEFAULT_TOL) -> ConvexityReport:
    """Sign test of f'' - p**2 * f on the grid."""
    p = abs(float(p))
    xs = interval.grid(grid_n)
    val, _, d2 = _c2_callables(f)
    g = d2(xs) - p * p * val(xs)
    scale = 1.0 + max(float(np.max(np.abs(d2(xs)))),
                      p * p * float(np.max(np.abs(val(xs)))))
    conv_v = float(np.max(-g)) / scale
    conc_v = float(np.max(g)) / scale
    return _settle(conv_v, conc_v, tol,
                   xs[int(np.argmax(-g))], xs[int(np.argmax(g))],
                   Method.SECOND_ORDER)


def check_gradient(f, interval: Interval, p: float,
                   grid_n: int = DEFAULT_GRID_N,
                   tol: float = DEFAULT_TOL) -> ConvexityReport:
    """Hyperbolic tangent-line test over all ordered grid pairs (x, y)."""
    p = abs(float(p))
    xs = interval.grid(grid_n)
    val, d1, _ = _c2_callables(f)
    fv = val(xs)
    dv = d1(xs)
    delta = xs[None, :] - xs[:, None]  # y - x with x down rows
    if p == 0.0:
        support = fv[:, None] + dv[:, None] * delta
        mag = np.abs(fv[:, None]) + np.abs(dv[:, None] * delta)
    else:
        ch = np.cosh(p * delta)
        sh = np.sinh(p * delta) / p
        support = fv[:, None] * ch + dv[:, None] * sh
        mag = np.abs(fv[:, None]) * ch + np.abs(dv[:, None] * sh)
    g = support - fv[None, :]  # > 0 violates convexity
    scale = 1.0 + float(np.max(mag))
    conv_v = float(np.max(g)) / scale
    conc_v = float(np.max(-g)) / scale
    iv = np.unravel_index(np.argmax(g), g.shape)
    ic = np.unravel_index(np.argmax(-g), g.shape)
    return _settle(conv_v, conc_v, tol, xs[iv[0]], xs[ic[0]], Method.GRADIENT)


def check_phi_monotone(f, interval: Interval, p: float,
                       grid_n: int = DEFAULT_GRID_N,
                       tol: float = DEFAULT_TOL) -> ConvexityReport:
    """Monotonicity test of phi(x) = f'(x) - p**2 * integral_a^x f."""
    p = abs(float(p))
    xs = interval.grid(grid_n)
    val, d1, _ = _c2_callables(f)
    dv = d1(xs)
    if p == 0.0:
        phi = dv
        scale = 1.0 + float(np.max(np.abs(dv)))
    else:
        cells = [integrate(val, Interval(xs[k], xs[k + 1]), _PHI_QUAD).value
                 for k in range(len(xs) - 1)]
        cum = np.concatenate([[0.0], np.cumsum(cells)])
        phi = dv - p * p * cum
        scale = 1.0 + float(np.max(np.abs(dv))) + p * p * float(np.max(np.abs(cum)))
    run_max = np.maximum.accumulate(phi)
    run_min = np.minimum.accumulate(phi)
    drop = run_max - phi   # > 0 where phi decreased: violates nondecreasing
    rise = phi - run_min   # > 0 where phi increased: violates nonincreasing
    conv_v = float(np.max(drop)) / scale
    conc_v = float(np.max(rise)) / scale
    return _settle(conv_v, conc_v, tol,
                   xs[int(np.argmax(drop))], xs[int(np.argmax(rise))],
                   Method.PHI)


def check_all(f, interval: Interval, p: float, grid_n: int = DEFAULT_GRID_N,
              tol: float = DEFAULT_TOL) -> dict:
    """All four checks; key extra: reports agree iff verdicts are identical."""
    reports = {
        Method.CHORD: check_chord(f, interval, p, grid_n, tol),
        Method.SECOND_ORDER: check_second_order(f, interval, p, grid_n, tol),
        Method.GRADIENT: check_gradient(f, interval, p, grid_n, tol),
        Method.PHI: check_phi_monotone(f, interval, p, grid_n, tol),
    }
    return reports


def methods_agree(reports: dict) -> bool:
    verdicts = {r.verdict for r in reports.values()}
    return len(verdicts) == 1


# ---------------------------------------------------------------------------
# example families

@dataclass(frozen=True)
class PowerClassification:
    """Where x**r is hyperbolic p-convex / p-concave on (0, inf)."""

    boundary: float | None
    convex_region: tuple | None
    concave_region: tuple


def classify_power(r: float, p: float) -> PowerClassification:
    """Curvature regions of x**r on (0, inf) for p != 0.

    For r outside (0, 1) the curvature excess r*(r-1)*x**(r-2) - p**2 * x**r
    changes sign at sqrt(r*(r-1))/|p|; for r in (0, 1) (and the degenerate
    r in {0, 1}) the function is hyperbolic p-concave on all of (0, inf).
    """
    if p == 0.0:
        raise ValueError("p must be nonzero")
    rr = r * (r - 1.0)
    if rr <= 0.0:
        return PowerClassification(None, None, (0.0, math.inf))
    x_star = math.sqrt(rr) / abs(p)
    return PowerClassification(x_star, (0.0, x_star), (x_star, math.inf))


def classify_exponential(mu: float, p: float) -> Verdict:
    """exp(mu*x): convex when |mu| > |p|, concave when |mu| < |p|."""
    if mu == 0.0 or p == 0.0:
        raise ValueError("mu and p must be nonzero")
    if abs(mu) > abs(p):
        return Verdict.CONVEX
    if abs(mu) < abs(p):
        return Verdict.CONCAVE
    return Verdict.BOUNDARY


def locate_power_boundary(r: float, p: float, lo: float = 1e-8,
                          hi: float | None = None, tol: float = 1e-12) -> float:
    """Bisection on the curvature excess of x**r; independent of
    classify_power's closed form, used to cross-check it."""
    if p == 0.0:
        raise ValueError("p must be nonzero")

    def g(x):
        return r * (r - 1.0) * x ** (r - 2.0) - p * p * x ** r

    if hi is None:
        hi = max(1.0, 2.0 * lo)
        while g(hi) > 0.0:
            hi *= 2.0
            if hi > 1e12:
                raise ValueError("no sign change found")
    glo = g(lo)
    if glo <= 0.0:
        raise ValueError("no sign change bracketed")
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
