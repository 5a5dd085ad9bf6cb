"""Unimodular step functions on an equidistant partition of [0, 1].

A driver is an angle vector (phi_1, ..., phi_m); the step values are
c_k = exp(i*phi_k) on the subinterval [(k-1)/m, k/m), with the last
subinterval closed at 1.  Fed into the coefficient recursion, each driver
generates a schlicht function, so these vectors are the search space for
the functional maximization in :mod:`schlichtopt.optimizer`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True, eq=False)
class StepDriver:
    """Angle vector of a unimodular step function on m equidistant subintervals.

    Angles are radians, canonically reduced to [0, 2*pi).  Instances are
    immutable (the array is read-only); build them with :func:`make_driver`.
    """

    angles: np.ndarray

    @property
    def m(self) -> int:
        """Number of subintervals."""
        return self.angles.shape[0]

    @cached_property
    def steps(self) -> np.ndarray:
        """Step values c_k = exp(i*phi_k); all of modulus 1."""
        c = np.exp(1j * self.angles)
        c.flags.writeable = False
        return c


def make_driver(angles) -> StepDriver:
    """Build a :class:`StepDriver` from a sequence of angles in radians.

    Angles are reduced mod 2*pi.  Raises ``ValueError`` for an empty vector
    or non-finite entries.
    """
    try:
        arr = np.asarray(angles, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"angles must be a sequence of reals: {exc}") from None
    if arr.ndim != 1:
        raise ValueError(f"angles must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("driver needs at least one angle")
    if not np.all(np.isfinite(arr)):
        raise ValueError("driver angles must all be finite")
    canonical = np.mod(arr, TWO_PI)
    # np.mod can round up to exactly 2*pi for tiny negative inputs
    canonical[canonical >= TWO_PI] = 0.0
    canonical.flags.writeable = False
    return StepDriver(canonical)


def eval_driver(d: StepDriver, x):
    """Step value at x: c_{floor(m*x)+1} for x in [0, 1) and c_m at x = 1.

    Subintervals are left-closed/right-open, so evaluation at an interior
    breakpoint k/m takes the right interval's value; s(0) is the first step.
    Accepts a scalar or an array; returns matching shape.
    """
    xs = np.asarray(x, dtype=float)
    if xs.size and (np.any(~np.isfinite(xs)) or np.any(xs < 0.0) or np.any(xs > 1.0)):
        raise ValueError("evaluation points must lie in [0, 1]")
    idx = np.minimum(np.floor(d.m * xs).astype(int), d.m - 1)
    out = d.steps[idx]
    if xs.ndim == 0:
        return complex(out)
    return out


def refine(d: StepDriver, factor: int) -> StepDriver:
    """Re-express ``d`` on ``factor * m`` subintervals by repeating each angle.

    The result evaluates identically to ``d`` at every x in [0, 1]; it only
    adds resolution for subsequent optimization.
    """
    if not isinstance(factor, (int, np.integer)) or isinstance(factor, bool):
        raise ValueError(f"refinement factor must be an integer, got {factor!r}")
    if factor < 1:
        raise ValueError(f"refinement factor must be >= 1, got {factor}")
    if factor == 1:
        return d
    rep = np.repeat(d.angles, factor)
    rep.flags.writeable = False
    return StepDriver(rep)


def driver_to_json(d: StepDriver) -> str:
    """Serialize to the angle JSON format with 17 significant digits."""
    vals = ", ".join(format(a, ".17g") for a in d.angles)
    return '{"m": %d, "angles_rad": [%s]}' % (d.m, vals)


def save_driver(d: StepDriver, path) -> None:
    """Write the angle JSON file ``{"m": ..., "angles_rad": [...]}``."""
    Path(path).write_text(driver_to_json(d) + "\n")


def _driver_from_json_dict(obj: dict) -> StepDriver:
    if "stages" in obj:
        # refinement-trace file: take the final stage's angles
        stages = obj["stages"]
        if not isinstance(stages, list) or not stages:
            raise ValueError("trace file has no stages")
        obj = stages[-1]
    if "angles_rad" not in obj:
        raise ValueError('angle JSON must contain "angles_rad"')
    angles = obj["angles_rad"]
    if not isinstance(angles, list):
        raise ValueError('"angles_rad" must be a list of radians')
    d = make_driver(angles)
    if "m" in obj and int(obj["m"]) != d.m:
        raise ValueError(f'"m" = {obj["m"]} does not match {d.m} angles')
    return d


def load_driver(path) -> StepDriver:
    """Read a driver from an angle file.

    Accepted formats: the JSON object ``{"m": ..., "angles_rad": [...]}``, a
    refinement-trace JSON (the final stage's angles are used), or a
    single-column CSV of radians.
    """
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON: {exc}") from None
        return _driver_from_json_dict(obj)
    angles = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            angles.append(float(line))
        except ValueError:
            raise ValueError(
                f"{path}:{lineno}: expected one radian value per line, got {line!r}"
            ) from None
    if not angles:
        raise ValueError(f"{path}: no angles found")
    return make_driver(angles)
