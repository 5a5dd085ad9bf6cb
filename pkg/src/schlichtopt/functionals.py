"""Real-valued objectives on the coefficient triple (a2, a3, a4).

Built-ins cover the two Milin logarithmic-coefficient functionals and the
moduli of the fifth and seventh coefficients of odd schlicht functions;
a registry lets callers add their own objective on (a2, a3, a4).  Every
functional carries an evaluation and an angle-gradient, so that composed
with the coefficient maps it becomes a smooth objective on the torus of
driver angles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coefficients import CoeffJacobian, CoefficientTriple, coeffs_234, grad_coeffs_234
from .driver import StepDriver, make_driver

FD_STEP = 1e-6


@dataclass(frozen=True)
class LogCoefficients:
    """Logarithmic coefficients gamma_n of log(f(z)/z) = 2 sum gamma_n z^n."""

    gamma1: complex
    gamma2: complex
    gamma3: complex


def log_coeffs(t: CoefficientTriple) -> LogCoefficients:
    """First three logarithmic coefficients of the function with these a_n.

    Expanding log(1 + a2 z + a3 z^2 + a4 z^3) to third order and halving:
    gamma1 = a2/2, gamma2 = (a3 - a2^2/2)/2, gamma3 = (a4 - a2 a3 + a2^3/3)/2.
    """
    a2, a3, a4 = t.a2, t.a3, t.a4
    return LogCoefficients(
        gamma1=a2 / 2.0,
        gamma2=(a3 - a2 * a2 / 2.0) / 2.0,
        gamma3=(a4 - a2 * a3 + a2 * a2 * a2 / 3.0) / 2.0,
    )


@dataclass(frozen=True)
class Functional:
    """A named real objective with evaluation and angle-gradient.

    ``eval`` maps a coefficient triple to the objective value.  ``grad``
    maps a driver and the coefficient Jacobian to the gradient of the
    composed objective with respect to the driver angles.
    """

    name: str
    eval: Callable[[CoefficientTriple], float]
    grad: Callable[[StepDriver, CoeffJacobian], np.ndarray]


def _finite_difference_grad(eval_fn: Callable[[CoefficientTriple], float]):
    """Central-difference angle gradient for user objectives without one."""

    def grad(d: StepDriver, jac: CoeffJacobian) -> np.ndarray:
        del jac  # the difference quotient goes through the full pipeline
        base = d.angles
        out = np.empty(d.m)
        for k in range(d.m):
            bumped = base.copy()
            bumped[k] = base[k] + FD_STEP
            hi = eval_fn(coeffs_234(make_driver(bumped)))
            bumped[k] = base[k] - FD_STEP
            lo = eval_fn(coeffs_234(make_driver(bumped)))
            out[k] = (hi - lo) / (2.0 * FD_STEP)
        return out

    return grad


# -- built-in evaluations ----------------------------------------------------


def _milin2_eval(t: CoefficientTriple) -> float:
    g = log_coeffs(t)
    return abs(g.gamma1) ** 2 + 2.0 * abs(g.gamma2) ** 2 - 1.5


def _milin3_eval(t: CoefficientTriple) -> float:
    g = log_coeffs(t)
    return (
        abs(g.gamma1) ** 2
        + 2.0 * abs(g.gamma2) ** 2
        + 3.0 * abs(g.gamma3) ** 2
        - 11.0 / 6.0
    )


def _odd5_eval(t: CoefficientTriple) -> float:
    return 0.5 * abs(t.a3 - 0.25 * t.a2 * t.a2)


def _odd7_eval(t: CoefficientTriple) -> float:
    return abs(0.5 * t.a4 - 0.25 * t.a3 * t.a2 + t.a2**3 / 16.0)


# -- built-in gradients ------------------------------------------------------
#
# Each built-in is |w|^2 or |w| of complex intermediates; the chain rule
# uses d|w|^2 = 2 Re(conj(w) dw) and d|w| = Re(conj(w) dw)/|w|, with the
# gradient taken to be zero at a modulus kink (w = 0).


def _log_coeff_differentials(t: CoefficientTriple, jac: CoeffJacobian):
    a2, a3 = t.a2, t.a3
    dg1 = jac.da2 / 2.0
    dg2 = (jac.da3 - a2 * jac.da2) / 2.0
    dg3 = (jac.da4 - a2 * jac.da3 - a3 * jac.da2 + a2 * a2 * jac.da2) / 2.0
    return dg1, dg2, dg3


def _milin2_grad(d: StepDriver, jac: CoeffJacobian) -> np.ndarray:
    t = coeffs_234(d)
    g = log_coeffs(t)
    dg1, dg2, _ = _log_coeff_differentials(t, jac)
    return 2.0 * (np.conj(g.gamma1) * dg1).real + 4.0 * (np.conj(g.gamma2) * dg2).real


def _milin3_grad(d: StepDriver, jac: CoeffJacobian) -> np.ndarray:
    t = coeffs_234(d)
    g = log_coeffs(t)
    dg1, dg2, dg3 = _log_coeff_differentials(t, jac)
    return (
        2.0 * (np.conj(g.gamma1) * dg1).real
        + 4.0 * (np.conj(g.gamma2) * dg2).real
        + 6.0 * (np.conj(g.gamma3) * dg3).real
    )


def _odd5_grad(d: StepDriver, jac: CoeffJacobian) -> np.ndarray:
    t = coeffs_234(d)
    w = t.a3 - 0.25 * t.a2 * t.a2
    if w == 0:
        return np.zeros(d.m)
    dw = jac.da3 - 0.5 * t.a2 * jac.da2
    return 0.5 * (np.conj(w) * dw).real / abs(w)


def _odd7_grad(d: StepDriver, jac: CoeffJacobian) -> np.ndarray:
    t = coeffs_234(d)
    w = 0.5 * t.a4 - 0.25 * t.a3 * t.a2 + t.a2**3 / 16.0
    if w == 0:
        return np.zeros(d.m)
    dw = (
        0.5 * jac.da4
        - 0.25 * (t.a2 * jac.da3 + t.a3 * jac.da2)
        + (3.0 / 16.0) * t.a2 * t.a2 * jac.da2
    )
    return (np.conj(w) * dw).real / abs(w)


_REGISTRY: dict[str, Functional] = {
    "milin2": Functional("milin2", _milin2_eval, _milin2_grad),
    "milin3": Functional("milin3", _milin3_eval, _milin3_grad),
    "odd5": Functional("odd5", _odd5_eval, _odd5_grad),
    "odd7": Functional("odd7", _odd7_eval, _odd7_grad),
}

BUILTIN_NAMES = tuple(_REGISTRY)


def get_functional(name: str) -> Functional:
    """Look up a registered functional by name."""
    try:
        return _REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise ValueError(f"unknown functional {name!r}; registered: {known}") from None


def register_functional(
    name: str,
    eval_fn: Callable[[CoefficientTriple], float],
    grad_fn: Callable[[StepDriver, CoeffJacobian], np.ndarray] | None = None,
) -> Functional:
    """Register a user objective on (a2, a3, a4) under ``name``.

    Without ``grad_fn`` the gradient falls back to central finite
    differences with step 1e-6.  Register before starting optimization
    runs; the registry is not meant to change mid-run.
    """
    if name in _REGISTRY:
        raise ValueError(f"functional {name!r} is already registered")
    spec = Functional(name, eval_fn, grad_fn or _finite_difference_grad(eval_fn))
    _REGISTRY[name] = spec
    return spec


def eval_functional(spec: Functional | str, t: CoefficientTriple) -> float:
    """Objective value of ``spec`` (a Functional or registered name) at ``t``."""
    if isinstance(spec, str):
        spec = get_functional(spec)
    return float(spec.eval(t))


def grad_functional(spec: Functional | str, d: StepDriver) -> np.ndarray:
    """Gradient of the composed objective with respect to the driver angles."""
    if isinstance(spec, str):
        spec = get_functional(spec)
    return np.asarray(spec.grad(d, grad_coeffs_234(d)), dtype=float)
