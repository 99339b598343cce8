"""Aerodynamic drag model of a spinning platter.

Tangential drag from the Bernoulli dynamic pressure, integrated over the
platter surface, gives power = sides * (pi/5) * C_d * rho * omega^3 * R^5.
A midpoint-rule quadrature of the same integral and a log-log exponent
sweep provide independent checks of the cubic (omega) and fifth-power
(radius) laws.

All quantities here are SI (rad/s, meters); rpm_to_rad_s / inches_to_meters
bridge from data-sheet units. C_d defaults to 1, so absolute watts should
be read as the geometry factor: the drag coefficient is a fudge factor
absorbing shape, roughness, viscosity and boundary-layer effects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import List, Sequence, Tuple

import numpy as np

from .model_core import DiskSpec, ValidationError

# Sea-level standard air at 20 C.
DEFAULT_AIR_DENSITY = 1.204  # kg/m^3
DEFAULT_DRAG_COEFFICIENT = 1.0
DEFAULT_SIDES = 2  # air drags on both platter faces

RPM_TO_RAD_S = 2.0 * math.pi / 60.0
METERS_PER_INCH = 0.0254


@dataclass(frozen=True)
class DragParams:
    """Physical inputs to the theoretical platter-drag model (SI units)."""

    radius_m: float
    omega_rad_s: float
    air_density: float = DEFAULT_AIR_DENSITY
    drag_coefficient: float = DEFAULT_DRAG_COEFFICIENT
    sides: int = DEFAULT_SIDES

    def __post_init__(self):
        if not (self.radius_m > 0 and math.isfinite(self.radius_m)):
            raise ValidationError(f"radius_m must be positive, got {self.radius_m!r}",
                                  field_name="radius_m")
        if not (self.omega_rad_s >= 0 and math.isfinite(self.omega_rad_s)):
            raise ValidationError(
                f"omega_rad_s must be nonnegative, got {self.omega_rad_s!r}",
                field_name="omega_rad_s")
        if not (self.air_density > 0 and math.isfinite(self.air_density)):
            raise ValidationError(
                f"air_density must be positive, got {self.air_density!r}",
                field_name="air_density")
        if not (self.drag_coefficient > 0 and math.isfinite(self.drag_coefficient)):
            raise ValidationError(
                f"drag_coefficient must be positive, got {self.drag_coefficient!r}",
                field_name="drag_coefficient")
        if self.sides not in (1, 2):
            raise ValidationError(f"sides must be 1 or 2, got {self.sides!r}",
                                  field_name="sides")


@dataclass(frozen=True)
class QuadratureSettings:
    radial_cells: int = 512
    angular_cells: int = 512

    def __post_init__(self):
        if self.radial_cells < 1:
            raise ValidationError("radial_cells must be >= 1",
                                  field_name="radial_cells")
        if self.angular_cells < 1:
            raise ValidationError("angular_cells must be >= 1",
                                  field_name="angular_cells")


@dataclass(frozen=True)
class SweepResult:
    """Samples and fitted slope of a log(power) vs log(variable) sweep."""

    samples: Tuple[Tuple[float, float], ...]
    fitted_exponent: float
    residual: float  # RMS of log-log fit errors


def rpm_to_rad_s(rpm: float) -> float:
    if not (rpm >= 0 and math.isfinite(rpm)):
        raise ValidationError(f"rpm must be nonnegative, got {rpm!r}",
                              field_name="rpm")
    return rpm * RPM_TO_RAD_S


def inches_to_meters(inches: float) -> float:
    if not (inches >= 0 and math.isfinite(inches)):
        raise ValidationError(f"inches must be nonnegative, got {inches!r}",
                              field_name="inches")
    return inches * METERS_PER_INCH


def tangential_speed(omega_rad_s: float, r_m: float) -> float:
    """Air-relative speed v = omega * r of a platter surface point."""
    if r_m < 0:
        raise ValidationError(f"r_m must be nonnegative, got {r_m!r}",
                              field_name="r_m")
    return omega_rad_s * r_m


def drag_force_per_area(air_density: float, drag_coefficient: float,
                        speed: float) -> float:
    """Tangential drag per unit platter area: half rho v^2 C_d (pascals)."""
    if air_density <= 0:
        raise ValidationError("air_density must be positive",
                              field_name="air_density")
    if drag_coefficient <= 0:
        raise ValidationError("drag_coefficient must be positive",
                              field_name="drag_coefficient")
    if speed < 0:
        raise ValidationError(f"speed must be nonnegative, got {speed!r}",
                              field_name="speed")
    return 0.5 * air_density * speed * speed * drag_coefficient


def analytic_power(p: DragParams) -> float:
    """Closed form of the drag-power integral: sides*(pi/5)*C_d*rho*omega^3*R^5.

    The 1/2 from the dynamic-pressure term is kept, so this matches
    numerical_power rather than the constant-free proportionality.
    """
    return (p.sides * (math.pi / 5.0) * p.drag_coefficient * p.air_density
            * p.omega_rad_s ** 3 * p.radius_m ** 5)


def numerical_power(p: DragParams, q: QuadratureSettings = QuadratureSettings()) -> float:
    """Midpoint-rule quadrature of sides * integral of half rho C_d (omega r)^3
    over the platter, dA = r dtheta dr, on a radial x angular product grid.

    The integrand has no theta dependence, so each radial ring's angular sum
    collapses to angular_cells * dtheta; the summation order is fixed, making
    the result deterministic.
    """
    dr = p.radius_m / q.radial_cells
    dtheta = 2.0 * math.pi / q.angular_cells
    r = (np.arange(q.radial_cells, dtype=np.float64) + 0.5) * dr
    # integrand * r from the area element: half rho C_d omega^3 r^3 * r
    radial = 0.5 * p.air_density * p.drag_coefficient * p.omega_rad_s ** 3 * r ** 4
    return p.sides * float(np.sum(radial)) * dr * (q.angular_cells * dtheta)


def drag_params_from_spec(spec: DiskSpec,
                          air_density: float = DEFAULT_AIR_DENSITY,
                          drag_coefficient: float = DEFAULT_DRAG_COEFFICIENT,
                          sides: int = DEFAULT_SIDES) -> DragParams:
    """SI drag parameters for one platter of a data-sheet spec."""
    return DragParams(radius_m=inches_to_meters(spec.diameter_in) / 2.0,
                      omega_rad_s=rpm_to_rad_s(spec.rpm),
                      air_density=air_density,
                      drag_coefficient=drag_coefficient,
                      sides=sides)


def recover_exponent(sweep_variable: str, base: DragParams,
                     multipliers: Sequence[float],
                     evaluator: str = "analytic",
                     settings: QuadratureSettings = QuadratureSettings()) -> SweepResult:
    """Recover the power-law exponent of omega or radius by OLS in log-log space."""
    if sweep_variable not in ("omega", "radius"):
        raise ValidationError(
            f"sweep_variable must be 'omega' or 'radius', got {sweep_variable!r}",
            field_name="sweep_variable")
    if evaluator not in ("analytic", "numerical"):
        raise ValidationError(
            f"evaluator must be 'analytic' or 'numerical', got {evaluator!r}",
            field_name="evaluator")
    distinct = sorted(set(multipliers))
    if len(distinct) < 3:
        raise ValidationError("need at least 3 distinct multipliers",
                              field_name="multipliers")
    if any(m <= 0 for m in distinct):
        raise ValidationError("multipliers must be positive",
                              field_name="multipliers")
    if sweep_variable == "omega" and base.omega_rad_s <= 0:
        raise ValidationError("base.omega_rad_s must be positive to sweep omega",
                              field_name="omega_rad_s")

    evaluate = analytic_power if evaluator == "analytic" else (
        lambda params: numerical_power(params, settings))
    samples: List[Tuple[float, float]] = []
    for m in distinct:
        if sweep_variable == "omega":
            x = base.omega_rad_s * m
            params = replace(base, omega_rad_s=x)
        else:
            x = base.radius_m * m
            params = replace(base, radius_m=x)
        power = evaluate(params)
        if not (power > 0 and math.isfinite(power)):
            raise ValidationError(
                f"nonpositive power {power!r} at multiplier {m}; cannot fit in log space")
        samples.append((x, power))

    log_x = np.log([s[0] for s in samples])
    log_y = np.log([s[1] for s in samples])
    slope, intercept = np.polyfit(log_x, log_y, 1)
    residual = float(np.sqrt(np.mean((log_y - (slope * log_x + intercept)) ** 2)))
    return SweepResult(samples=tuple(samples), fitted_exponent=float(slope),
                       residual=residual)
