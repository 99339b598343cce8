"""Self-check of the drag theory: quadrature convergence and exponent recovery.

Passes when the omega and radius log-log slopes land within 1e-3 of 3 and 5
and the 512x512 quadrature agrees with the closed form to 1e-4 relative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .drag_theory import (DragParams, QuadratureSettings, analytic_power,
                          numerical_power, recover_exponent)
from .model_core import ValidationError

DEFAULT_GRIDS = (32, 64, 128, 256, 512)
DEFAULT_MULTIPLIERS = (1.0, 2.0, 4.0, 8.0, 16.0)
# 2.6 inch platter at 15k RPM, the kind of drive the empirical law targets.
DEFAULT_BASE = DragParams(radius_m=0.033, omega_rad_s=1581.1)

SLOPE_TOL = 1e-3
CONVERGENCE_TOL = 1e-4


@dataclass(frozen=True)
class VerificationReport:
    omega_exponent: float
    radius_exponent: float
    omega_exponent_numerical: float
    radius_exponent_numerical: float
    convergence: Tuple[Tuple[int, float], ...]  # (cells per side, relative error)
    failures: Tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def run_verification(base: DragParams = DEFAULT_BASE,
                     grids: Sequence[int] = DEFAULT_GRIDS,
                     multipliers: Sequence[float] = DEFAULT_MULTIPLIERS,
                     cells: int = 512) -> VerificationReport:
    if len(set(multipliers)) < 3:
        raise ValidationError("need at least 3 distinct sweep multipliers",
                              field_name="multipliers")
    settings = QuadratureSettings(radial_cells=cells, angular_cells=cells)
    omega = recover_exponent("omega", base, multipliers, "analytic")
    radius = recover_exponent("radius", base, multipliers, "analytic")
    omega_num = recover_exponent("omega", base, multipliers, "numerical", settings)
    radius_num = recover_exponent("radius", base, multipliers, "numerical", settings)

    exact = analytic_power(base)
    convergence: List[Tuple[int, float]] = []
    for n in grids:
        approx = numerical_power(base, QuadratureSettings(n, n))
        convergence.append((n, abs(approx - exact) / exact))

    failures: List[str] = []
    for label, slope, target, tol in (
            ("omega exponent (analytic)", omega.fitted_exponent, 3.0, 1e-9),
            ("radius exponent (analytic)", radius.fitted_exponent, 5.0, 1e-9),
            ("omega exponent (numerical)", omega_num.fitted_exponent, 3.0, SLOPE_TOL),
            ("radius exponent (numerical)", radius_num.fitted_exponent, 5.0, SLOPE_TOL)):
        if abs(slope - target) > tol:
            failures.append(f"{label} = {slope:.9f}, expected {target} +- {tol:g}")
    final_err = convergence[-1][1]
    if final_err > CONVERGENCE_TOL:
        failures.append(
            f"quadrature error {final_err:.3e} at {grids[-1]}x{grids[-1]} "
            f"exceeds {CONVERGENCE_TOL:g}")
    for (n1, e1), (n2, e2) in zip(convergence, convergence[1:]):
        # Small absolute floor so the roundoff plateau on very fine grids
        # does not read as divergence.
        if e2 > e1 + 1e-12:
            failures.append(
                f"quadrature error increased from {e1:.3e} at {n1} "
                f"to {e2:.3e} at {n2} cells")

    return VerificationReport(
        omega_exponent=omega.fitted_exponent,
        radius_exponent=radius.fitted_exponent,
        omega_exponent_numerical=omega_num.fitted_exponent,
        radius_exponent_numerical=radius_num.fitted_exponent,
        convergence=tuple(convergence),
        failures=tuple(failures))
