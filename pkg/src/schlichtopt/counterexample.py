"""Embedded m=20 driver for the odd seventh-coefficient counterexample.

The modulus of the seventh coefficient of odd schlicht functions that are
typically real has maximum 1090/1083.  The driver below generates a
schlicht function whose odd seventh-coefficient modulus exceeds that
value, so the typically-real maximum does not extend to the whole class.
"""

from __future__ import annotations

from .driver import StepDriver, make_driver

# Angles in radians, one per subinterval of the m=20 equipartition.
COUNTEREXAMPLE_ANGLES = (
    3.180, 3.185, 3.189, 3.195, 3.203, 3.212, 3.224, 3.241, 3.268, 3.315,
    3.536, 3.835, 2.770, 2.686, 2.600, 2.306, 3.000, 3.039, 3.062, 3.078,
)

# Sharp maximum of the odd seventh-coefficient modulus over the
# typically-real subclass; the verification threshold.
TYPICALLY_REAL_ODD7_MAX = 1090.0 / 1083.0


def counterexample_driver() -> StepDriver:
    """The embedded m=20 counterexample driver."""
    return make_driver(COUNTEREXAMPLE_ANGLES)
