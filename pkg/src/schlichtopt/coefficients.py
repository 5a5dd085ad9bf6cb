"""Coefficients of the schlicht function generated by a step driver.

Three routes are provided and deliberately kept independent of each other:

* closed forms for a2, a3, a4 as trigonometric polynomials of the angles,
* an exact piecewise-polynomial integration of the coefficient recursion
  for a2..aN, used as the cross-checking oracle, and
* analytic derivatives of the closed forms with respect to the angles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .driver import StepDriver

# The recursion keeps O(m * N^2) polynomial segments; refuse runs that are
# clearly a misuse rather than let them eat memory.
MAX_SUBINTERVALS_FOR_HIGH_ORDER = 10**6


@dataclass(frozen=True)
class CoefficientTriple:
    """Taylor coefficients a2, a3, a4 of f(z) = z + sum a_n z^n."""

    a2: complex
    a3: complex
    a4: complex

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (self.a2, self.a3, self.a4)


@dataclass(frozen=True)
class CoeffJacobian:
    """Angle-derivatives of (a2, a3, a4): matrix[j-2, k-1] = d a_j / d phi_k."""

    matrix: np.ndarray

    @property
    def da2(self) -> np.ndarray:
        return self.matrix[0]

    @property
    def da3(self) -> np.ndarray:
        return self.matrix[1]

    @property
    def da4(self) -> np.ndarray:
        return self.matrix[2]


def coeffs_234(d: StepDriver) -> CoefficientTriple:
    """Closed-form a2, a3, a4 of the function generated by ``d``.

    With c_k = exp(i*phi_k) and the empty prefix sum P_1 = 0,
    P_k = c_1 + ... + c_{k-1}:

        a2 = -(2/m) sum_k c_k
        a3 = a2^2 - (1/m^2) sum_k (2k-1) c_k^2
        a4 = 3 a2 a3 - 2 a2^3
             - (2/m^3) sum_k c_k^2 (k^2 c_k + (2k-1) P_k)
    """
    c = d.steps
    m = d.m
    k = np.arange(1, m + 1)
    odd = 2.0 * k - 1.0
    c2 = c * c
    a2 = -2.0 * c.sum() / m
    a3 = a2 * a2 - (odd * c2).sum() / m**2
    prefix = np.concatenate(([0.0 + 0.0j], np.cumsum(c)[:-1]))
    inner = (c2 * (k * k * c + odd * prefix)).sum()
    a4 = 3.0 * a2 * a3 - 2.0 * a2**3 - 2.0 * inner / m**3
    return CoefficientTriple(complex(a2), complex(a3), complex(a4))


def grad_coeffs_234(d: StepDriver) -> CoeffJacobian:
    """Analytic Jacobian of the closed forms, via d c_k / d phi_k = i c_k.

    The a4 row differentiates the prefix sums as well: an angle phi_l enters
    P_k for every k > l, which contributes the suffix sum of (2k-1) c_k^2.
    """
    c = d.steps
    m = d.m
    k = np.arange(1, m + 1)
    odd = 2.0 * k - 1.0
    c2 = c * c

    a2 = -2.0 * c.sum() / m
    a3 = a2 * a2 - (odd * c2).sum() / m**2
    prefix = np.concatenate(([0.0 + 0.0j], np.cumsum(c)[:-1]))

    da2 = (-2.0j / m) * c
    da3 = 2.0 * a2 * da2 - (2.0j / m**2) * odd * c2

    weighted = odd * c2
    suffix = weighted.sum() - np.cumsum(weighted)
    d_inner = 1.0j * (3.0 * k * k * c2 * c + 2.0 * odd * c2 * prefix + c * suffix)
    da4 = 3.0 * (da2 * a3 + a2 * da3) - 6.0 * a2 * a2 * da2 - 2.0 * d_inner / m**3

    matrix = np.vstack([da2, da3, da4])
    matrix.flags.writeable = False
    return CoeffJacobian(matrix)


# ---------------------------------------------------------------------------
# Exact recursion oracle.
#
# g_1 = 1 and g_n(x) = -int_0^x sum_{j<n} 2j t^{n-j-1} g_j(t) s(t)^{n-j} dt;
# the generated coefficients are a_n = g_n(1).  On each subinterval the
# driver is constant, so every integrand is a polynomial and the recursion
# integrates in closed form segment by segment; only rounding error enters.
# Polynomials are kept in the local variable u = x - (left endpoint), which
# bounds coefficient growth for large m.
# ---------------------------------------------------------------------------


def _poly_mul(p: list[complex], q: list[complex]) -> list[complex]:
    out = [0.0 + 0.0j] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            out[i + j] += pi * qj
    return out


def _poly_antideriv(p: list[complex]) -> list[complex]:
    return [0.0 + 0.0j] + [v / (i + 1) for i, v in enumerate(p)]


def _poly_eval(p: list[complex], u: float) -> complex:
    acc = 0.0 + 0.0j
    for v in reversed(p):
        acc = acc * u + v
    return acc


@dataclass(frozen=True)
class PiecewisePolyState:
    """Piecewise-polynomial representation of the recursion solutions.

    ``polys[n - 2][i]`` holds the coefficients (lowest degree first) of g_n
    on subinterval i, in the local variable u = x - i/m.  g_1 is identically
    1 and not stored.  ``endpoints[n - 2]`` is a_n = g_n(1).
    """

    m: int
    order: int
    polys: tuple[tuple[tuple[complex, ...], ...], ...]
    endpoints: tuple[complex, ...]

    def value(self, n: int, x: float) -> complex:
        """Evaluate g_n at x in [0, 1] (same breakpoint convention as the driver)."""
        if not 2 <= n <= self.order:
            raise ValueError(f"order {n} outside stored range 2..{self.order}")
        if not 0.0 <= x <= 1.0:
            raise ValueError("x must lie in [0, 1]")
        i = min(int(np.floor(self.m * x)), self.m - 1)
        return _poly_eval(list(self.polys[n - 2][i]), x - i / self.m)

    def endpoint_values(self) -> np.ndarray:
        """The coefficient vector (a2, ..., aN)."""
        return np.array(self.endpoints, dtype=complex)


def propagate_recursion(d: StepDriver, order: int) -> PiecewisePolyState:
    """Integrate the coefficient recursion exactly across the partition.

    Returns the full piecewise state up to the requested order.  Complexity
    is O(m * order^4) scalar operations; ``order`` beyond 8 is refused for
    degenerate partition counts (see MAX_SUBINTERVALS_FOR_HIGH_ORDER).
    """
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    m = d.m
    if order > 8 and m > MAX_SUBINTERVALS_FOR_HIGH_ORDER:
        raise ValueError(
            f"refusing recursion with m={m} subintervals at order {order}; "
            f"the piecewise state would be excessive"
        )
    h = 1.0 / m
    steps = d.steps

    # g_n value at the current interval's left endpoint; index by n
    left = [0.0 + 0.0j] * (order + 1)
    left[1] = 1.0 + 0.0j
    stored: list[list[tuple[complex, ...]]] = [[] for _ in range(order - 1)]

    for i in range(m):
        ck = complex(steps[i])
        x0 = i / m
        # (x0 + u)^p for p = 0 .. order-2
        powers: list[list[complex]] = [[1.0 + 0.0j]]
        for _ in range(order - 2):
            powers.append(_poly_mul(powers[-1], [x0, 1.0 + 0.0j]))
        cpow = [1.0 + 0.0j]
        for _ in range(order - 1):
            cpow.append(cpow[-1] * ck)

        local: list[list[complex] | None] = [None] * (order + 1)
        local[1] = [1.0 + 0.0j]
        for n in range(2, order + 1):
            integrand = [0.0 + 0.0j] * (n - 1)
            for j in range(1, n):
                factor = 2.0 * j * cpow[n - j]
                term = _poly_mul(powers[n - j - 1], local[j])
                for deg, v in enumerate(term):
                    integrand[deg] -= factor * v
            poly = _poly_antideriv(integrand)
            poly[0] = left[n]
            local[n] = poly
            stored[n - 2].append(tuple(poly))
        for n in range(2, order + 1):
            left[n] = _poly_eval(local[n], h)

    return PiecewisePolyState(
        m=m,
        order=order,
        polys=tuple(tuple(per_interval) for per_interval in stored),
        endpoints=tuple(left[2 : order + 1]),
    )


def coeffs_upto(d: StepDriver, order: int) -> np.ndarray:
    """Coefficient vector (a2, ..., aN) from the exact recursion.

    Independent of :func:`coeffs_234`; the two routes agreeing to 1e-12 is
    the module's central cross-check.
    """
    return propagate_recursion(d, order).endpoint_values()
