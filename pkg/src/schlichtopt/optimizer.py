"""Multi-start monotone ascent over driver angles with partition refinement.

The objective for a functional at partition size m is the composed map
angles -> coefficients -> functional value, a smooth function on the torus
[0, 2*pi)^m.  Local ascent runs limited-memory BFGS on the negated
objective; a line search with a sufficient-decrease condition makes every
accepted iterate improve, and the best evaluated point is tracked as a
safety net so a failed final line search can never report a regression.
Multi-start adds deterministic and seeded random initial points;
successive refinement re-expresses the incumbent on a finer partition
(which preserves its value exactly) and continues, so incumbents never
drop along a schedule.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .coefficients import coeffs_234, grad_coeffs_234
from .driver import TWO_PI, StepDriver, make_driver, refine
from .functionals import Functional


class NonFiniteObjectiveError(RuntimeError):
    """The objective returned NaN or infinity; the functional is broken."""


@dataclass
class AscentOptions:
    """Knobs for local ascent and multi-start.

    ``workers`` only distributes independent restarts; results are reduced
    in restart order, so traces are identical for any worker count.
    """

    grad_tol: float = 1e-10
    max_iters: int = 10000
    restarts: int = 64
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.grad_tol > 0.0:
            raise ValueError(f"grad_tol must be > 0, got {self.grad_tol}")
        if self.max_iters < 0:
            raise ValueError(f"max_iters must be >= 0, got {self.max_iters}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class OptimizationResult:
    """Incumbent driver and objective value of one maximization."""

    driver: StepDriver
    value: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class RefinementTrace:
    """Stage-by-stage incumbents of a refinement schedule."""

    stages: tuple[tuple[int, OptimizationResult], ...]

    @property
    def final(self) -> OptimizationResult:
        return self.stages[-1][1]

    def values(self) -> list[float]:
        return [result.value for _, result in self.stages]

    def stage_value(self, m: int) -> float:
        for stage_m, result in self.stages:
            if stage_m == m:
                return result.value
        raise KeyError(f"no stage with m={m} in trace")

    def to_json_dict(self) -> dict:
        return {
            "stages": [
                {
                    "m": stage_m,
                    "value": result.value,
                    "angles_rad": [float(a) for a in result.driver.angles],
                    "iterations": result.iterations,
                    "converged": result.converged,
                }
                for stage_m, result in self.stages
            ]
        }


def _check_finite(value: float) -> float:
    if not np.isfinite(value):
        raise NonFiniteObjectiveError(f"objective evaluated to {value!r}")
    return value


def _make_objective(spec: Functional):
    """Value and value+gradient closures on raw angle arrays."""

    def value(phi: np.ndarray) -> float:
        d = StepDriver(np.mod(phi, TWO_PI))
        return _check_finite(float(spec.eval(coeffs_234(d))))

    def value_grad(phi: np.ndarray) -> tuple[float, np.ndarray]:
        d = StepDriver(np.mod(phi, TWO_PI))
        v = _check_finite(float(spec.eval(coeffs_234(d))))
        g = np.asarray(spec.grad(d, grad_coeffs_234(d)), dtype=float)
        return v, g

    return value, value_grad


def local_maximize(spec: Functional, d0: StepDriver, opts: AscentOptions) -> OptimizationResult:
    """Monotone local ascent of ``spec`` from ``d0``.

    Terminates when the gradient sup-norm drops below ``opts.grad_tol``,
    after ``opts.max_iters`` quasi-Newton iterations, or when no improving
    step exists at double precision.  ``max_iters=0`` evaluates without
    moving.  The reported value is recomputed from the returned canonical
    driver, so result.value always matches eval(coeffs(result.driver)).
    """
    value, value_grad = _make_objective(spec)
    phi0 = np.array(d0.angles, dtype=float)

    if opts.max_iters == 0:
        _, g0 = value_grad(phi0)
        best = make_driver(phi0)
        return OptimizationResult(
            driver=best,
            value=value(best.angles),
            iterations=0,
            converged=bool(np.max(np.abs(g0)) < opts.grad_tol),
        )

    # Track the best point over all evaluations (every trial is a valid
    # angle vector), so an abnormal line-search exit cannot lose ground on
    # the start point -- this is what makes warm-started refinement stages
    # provably nondecreasing.
    best_f = -np.inf
    best_phi = phi0

    def negated(phi: np.ndarray):
        nonlocal best_f, best_phi
        f, g = value_grad(phi)
        if f > best_f:
            best_f = f
            best_phi = phi.copy()
        return -f, -g

    res = minimize(
        negated,
        phi0,
        jac=True,
        method="L-BFGS-B",
        options={
            "maxiter": opts.max_iters,
            "gtol": opts.grad_tol,
            "ftol": 0.0,  # stop on gradient or iteration count, not f-stagnation
            "maxcor": 20,
            "maxls": 60,
        },
    )
    phi = np.asarray(res.x, dtype=float)
    f, g = value_grad(phi)
    if f < best_f:
        phi = best_phi
        f, g = value_grad(phi)
    best = make_driver(phi)
    return OptimizationResult(
        driver=best,
        value=value(best.angles),
        iterations=int(res.nit),
        converged=bool(np.max(np.abs(g)) < opts.grad_tol),
    )


def _best_result(results: list[OptimizationResult]) -> OptimizationResult:
    best = results[0]
    for result in results[1:]:
        if result.value > best.value:
            best = result
    return best


def _run_starts(
    spec: Functional, starts: list[np.ndarray], opts: AscentOptions
) -> list[OptimizationResult]:
    def run(phi0: np.ndarray) -> OptimizationResult:
        return local_maximize(spec, make_driver(phi0), opts)

    if opts.workers == 1 or len(starts) <= 1:
        return [run(phi0) for phi0 in starts]
    with ThreadPoolExecutor(max_workers=opts.workers) as pool:
        return list(pool.map(run, starts))


def _random_starts(m: int, count: int, seed_seq: np.random.SeedSequence) -> list[np.ndarray]:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    return list(rng.uniform(0.0, TWO_PI, size=(count, m)))


def multi_start(spec: Functional, m: int, opts: AscentOptions) -> OptimizationResult:
    """Best of ``opts.restarts`` seeded random starts plus two deterministic ones.

    The deterministic starts are the all-pi and all-zero angle vectors.
    Ties keep the earliest start in the fixed order (deterministic pair
    first, then random starts by index), so results are reproducible for
    any worker count.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    starts = [np.full(m, np.pi), np.zeros(m)]
    starts += _random_starts(m, opts.restarts, np.random.SeedSequence(opts.seed))
    return _best_result(_run_starts(spec, starts, opts))


def _validate_schedule(schedule) -> list[int]:
    sizes = [int(m) for m in schedule]
    if not sizes:
        raise ValueError("schedule must be nonempty")
    if any(m < 1 for m in sizes):
        raise ValueError(f"schedule entries must be positive, got {sizes}")
    for prev, nxt in zip(sizes, sizes[1:]):
        if nxt <= prev:
            raise ValueError(f"schedule must be strictly increasing, got {sizes}")
        if nxt % prev != 0:
            raise ValueError(
                f"each schedule entry must divide the next (prolongation by an "
                f"integer factor), got {prev} then {nxt}"
            )
    return sizes


def refine_schedule(
    spec: Functional,
    schedule,
    opts: AscentOptions,
    init: StepDriver | None = None,
) -> RefinementTrace:
    """Successive-refinement maximization across increasing partition sizes.

    The first stage is a full multi-start, or a single ascent from ``init``
    when one is supplied (its partition size must equal the schedule head).
    Each later stage re-expresses the incumbent on the finer partition
    (exactly preserving its value), ascends from it, and adds
    ``opts.restarts`` fresh random starts drawn from a per-stage stream of
    the run seed; the warm start wins ties, so stage values never decrease.
    """
    sizes = _validate_schedule(schedule)
    stages: list[tuple[int, OptimizationResult]] = []
    if init is None:
        incumbent = multi_start(spec, sizes[0], opts)
    else:
        if init.m != sizes[0]:
            raise ValueError(
                f"init driver has m={init.m} but the schedule starts at {sizes[0]}"
            )
        incumbent = local_maximize(spec, init, opts)
    stages.append((sizes[0], incumbent))
    for stage_index, m in enumerate(sizes[1:], start=1):
        factor = m // sizes[stage_index - 1]
        warm = refine(incumbent.driver, factor)
        starts = [warm.angles]
        starts += _random_starts(
            m, opts.restarts, np.random.SeedSequence(opts.seed, spawn_key=(stage_index,))
        )
        incumbent = _best_result(_run_starts(spec, starts, opts))
        stages.append((m, incumbent))
    return RefinementTrace(stages=tuple(stages))
