"""Maximize coefficient functionals of schlicht functions over step drivers.

The package evaluates the coefficients (a2, a3, a4) generated by
unimodular step drivers in closed form, exposes real objectives on them
(Milin logarithmic-coefficient functionals, odd-coefficient moduli), and
maximizes those objectives by multi-start ascent with successive partition
refinement.  A scalar module computes the typically-real lower bound for
the Milin constant.
"""

from .coefficients import (
    CoeffJacobian,
    CoefficientTriple,
    PiecewisePolyState,
    coeffs_234,
    coeffs_upto,
    grad_coeffs_234,
    propagate_recursion,
)
from .counterexample import (
    COUNTEREXAMPLE_ANGLES,
    TYPICALLY_REAL_ODD7_MAX,
    counterexample_driver,
)
from .driver import (
    TWO_PI,
    StepDriver,
    driver_to_json,
    eval_driver,
    load_driver,
    make_driver,
    refine,
    save_driver,
)
from .functionals import (
    BUILTIN_NAMES,
    Functional,
    LogCoefficients,
    eval_functional,
    get_functional,
    grad_functional,
    log_coeffs,
    register_functional,
)
from .milin_bound import (
    BoundCurvePoint,
    bound_curve,
    bound_value,
    milin_lower_bound,
    solve_lambda0,
    stationarity_residual,
)
from .optimizer import (
    AscentOptions,
    NonFiniteObjectiveError,
    OptimizationResult,
    RefinementTrace,
    local_maximize,
    multi_start,
    refine_schedule,
)

__version__ = "0.1.0"

__all__ = [
    "TWO_PI",
    "AscentOptions",
    "BUILTIN_NAMES",
    "BoundCurvePoint",
    "COUNTEREXAMPLE_ANGLES",
    "CoeffJacobian",
    "CoefficientTriple",
    "Functional",
    "LogCoefficients",
    "NonFiniteObjectiveError",
    "OptimizationResult",
    "PiecewisePolyState",
    "RefinementTrace",
    "StepDriver",
    "TYPICALLY_REAL_ODD7_MAX",
    "bound_curve",
    "bound_value",
    "coeffs_234",
    "coeffs_upto",
    "counterexample_driver",
    "driver_to_json",
    "eval_driver",
    "eval_functional",
    "get_functional",
    "grad_coeffs_234",
    "grad_functional",
    "load_driver",
    "local_maximize",
    "log_coeffs",
    "make_driver",
    "milin_lower_bound",
    "multi_start",
    "propagate_recursion",
    "refine",
    "refine_schedule",
    "register_functional",
    "save_driver",
    "solve_lambda0",
    "stationarity_residual",
]
