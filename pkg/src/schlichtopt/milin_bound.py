"""Scalar analysis behind the typically-real lower bound for the Milin constant.

The bound curve M(lambda) = 2 lambda^4 e^{-4 lambda}
+ (3 lambda^2 + 2 lambda + 1) e^{-2 lambda} - 1 attains its maximum where
g(lambda) = 4 e^{-2 lambda}(lambda^2 - lambda^3) - 3 lambda + 1 vanishes;
indeed dM/dlambda = 2 lambda e^{-2 lambda} g(lambda).  This module
evaluates the curve, solves g = 0 by bisection on [0, 1], and reports the
resulting bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_BRACKET_LO = 0.0
_BRACKET_HI = 1.0


@dataclass(frozen=True)
class BoundCurvePoint:
    """Bound curve at one lambda: F from the squared form, M = F - 3/2."""

    lam: float
    F: float
    M: float


def stationarity_residual(lam: float) -> float:
    """g(lambda) = 4 e^{-2 lambda}(lambda^2 - lambda^3) - 3 lambda + 1."""
    if not lam >= 0.0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    return 4.0 * math.exp(-2.0 * lam) * (lam**2 - lam**3) - 3.0 * lam + 1.0


def bound_value(lam: float) -> float:
    """M(lambda), the bound curve value."""
    if not lam >= 0.0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    e2 = math.exp(-2.0 * lam)
    return 2.0 * lam**4 * e2 * e2 + (3.0 * lam**2 + 2.0 * lam + 1.0) * e2 - 1.0


def bound_curve(lam: float) -> BoundCurvePoint:
    """Evaluate both printed forms of the curve at ``lam``.

    F and M are computed from their own formulas (not via F - 3/2 = M), so
    the algebraic identity between them stays a checkable invariant.
    """
    e2 = math.exp(-2.0 * lam)
    F = 2.0 * (lam**2 * e2 + 0.5) ** 2 + (lam + 1.0) ** 2 * e2
    return BoundCurvePoint(lam=lam, F=F, M=bound_value(lam))


def solve_lambda0(tol: float) -> float:
    """Root of the stationarity equation in [0, 1], by bisection.

    The bracket endpoints have the analytic signs g(0) = 1 and g(1) = -2;
    both are asserted before iterating.  The returned root satisfies
    |g(root)| <= tol with final bracket width <= tol.  Tolerances must lie
    in (0, 1e-6]; values below ~1e-15 are not attainable in double
    precision and raise.
    """
    if not 0.0 < tol <= 1e-6:
        raise ValueError(f"tol must lie in (0, 1e-6], got {tol}")
    a, b = _BRACKET_LO, _BRACKET_HI
    ga = stationarity_residual(a)
    gb = stationarity_residual(b)
    if not (ga > 0.0 and gb < 0.0):
        raise AssertionError("bracket endpoint signs changed; residual is broken")
    # |g'| < 3 on the bracket, so width tol/8 leaves residual headroom
    width_goal = tol / 8.0
    mid = a
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid == a or mid == b:
            break
        gm = stationarity_residual(mid)
        if gm == 0.0:
            return mid
        if gm > 0.0:
            a = mid
        else:
            b = mid
        if b - a <= width_goal:
            break
    root = 0.5 * (a + b)
    if abs(stationarity_residual(root)) > tol:
        raise RuntimeError(f"bisection cannot reach |g| <= {tol} in double precision")
    return root


def milin_lower_bound() -> tuple[float, float]:
    """The stationary lambda0 and the bound M(lambda0)."""
    lam0 = solve_lambda0(1e-12)
    return lam0, bound_value(lam0)
