"""Semi-empirical HDD spindle power law and its ratio/calibration forms.

Power scales as platters * rpm^a * diameter^b with empirical exponents
a=2.8, b=4.6 (theoretical integer counterparts 3 and 5 are available as a
preset). Inputs stay in vendor data-sheet units (RPM, inches): ratios cancel
units and calibration absorbs them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence


class ValidationError(ValueError):
    """A parameter or record violates an invariant; names the offending field."""

    def __init__(self, message: str, field_name: Optional[str] = None,
                 record_id: Optional[str] = None):
        super().__init__(message)
        self.field_name = field_name
        self.record_id = record_id


@dataclass(frozen=True)
class DiskSpec:
    """One drive model's physical parameters.

    diameter_in is the platter diameter, not the external form factor.
    """

    model_id: str
    platters: int
    rpm: float
    diameter_in: float
    capacity_gb: Optional[float] = None
    measured_watts: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.platters, int) or self.platters < 1:
            raise ValidationError(
                f"{self.model_id!r}: platters must be a positive integer, "
                f"got {self.platters!r}",
                field_name="platters", record_id=self.model_id)
        if not (self.rpm > 0 and math.isfinite(self.rpm)):
            raise ValidationError(
                f"{self.model_id!r}: rpm must be positive, got {self.rpm!r}",
                field_name="rpm", record_id=self.model_id)
        if not (self.diameter_in > 0 and math.isfinite(self.diameter_in)):
            raise ValidationError(
                f"{self.model_id!r}: diameter_in must be positive, "
                f"got {self.diameter_in!r}",
                field_name="diameter_in", record_id=self.model_id)
        if self.capacity_gb is not None and not (
                self.capacity_gb >= 0 and math.isfinite(self.capacity_gb)):
            raise ValidationError(
                f"{self.model_id!r}: capacity_gb must be nonnegative, "
                f"got {self.capacity_gb!r}",
                field_name="capacity_gb", record_id=self.model_id)
        if self.measured_watts is not None and not (
                self.measured_watts > 0 and math.isfinite(self.measured_watts)):
            raise ValidationError(
                f"{self.model_id!r}: measured_watts must be positive, "
                f"got {self.measured_watts!r}",
                field_name="measured_watts", record_id=self.model_id)


@dataclass(frozen=True)
class PowerModel:
    """Exponent triple plus optional calibrated proportionality constant.

    With constant_k set, relative_power yields watts; otherwise it is a
    dimensionless relative figure.
    """

    platter_exp: float = 1.0
    rpm_exp: float = 2.8
    diameter_exp: float = 4.6
    constant_k: Optional[float] = None

    def __post_init__(self):
        for name in ("platter_exp", "rpm_exp", "diameter_exp"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite", field_name=name)
        if self.rpm_exp <= 0:
            raise ValidationError("rpm_exp must be positive", field_name="rpm_exp")
        if self.diameter_exp <= 0:
            raise ValidationError("diameter_exp must be positive",
                                  field_name="diameter_exp")
        if self.constant_k is not None and not (
                self.constant_k > 0 and math.isfinite(self.constant_k)):
            raise ValidationError("constant_k must be positive",
                                  field_name="constant_k")

    @property
    def calibrated(self) -> bool:
        return self.constant_k is not None


EMPIRICAL = PowerModel(platter_exp=1.0, rpm_exp=2.8, diameter_exp=4.6)
THEORETICAL = PowerModel(platter_exp=1.0, rpm_exp=3.0, diameter_exp=5.0)

PRESETS = {"empirical": EMPIRICAL, "theoretical": THEORETICAL}


def preset(name: str) -> PowerModel:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValidationError(
            f"unknown exponent preset {name!r}; "
            f"expected one of {sorted(PRESETS)}", field_name="preset") from None


def _base_power(spec: DiskSpec, model: PowerModel) -> float:
    return (spec.platters ** model.platter_exp
            * spec.rpm ** model.rpm_exp
            * spec.diameter_in ** model.diameter_exp)


def relative_power(spec: DiskSpec, model: PowerModel = EMPIRICAL) -> float:
    """Power-law evaluation k * N^a * rpm^b * D^c (k=1 when uncalibrated)."""
    k = model.constant_k if model.constant_k is not None else 1.0
    return k * _base_power(spec, model)


def power_ratio(a: DiskSpec, b: DiskSpec, model: PowerModel = EMPIRICAL) -> float:
    """Ratio form: power of b over power of a; the constant cancels."""
    return ((b.platters / a.platters) ** model.platter_exp
            * (b.rpm / a.rpm) ** model.rpm_exp
            * (b.diameter_in / a.diameter_in) ** model.diameter_exp)


def predict_from_reference(ref: DiskSpec, ref_watts: float, target: DiskSpec,
                           model: PowerModel = EMPIRICAL) -> float:
    """Absolute-watt estimate for target from a measured reference drive."""
    if not (ref_watts > 0 and math.isfinite(ref_watts)):
        raise ValidationError(f"ref_watts must be positive, got {ref_watts!r}",
                              field_name="ref_watts")
    return ref_watts * power_ratio(ref, target, model)


def calibrate(observations: Sequence[DiskSpec],
              model: PowerModel = EMPIRICAL) -> PowerModel:
    """Fit constant_k to measured watts; exponents are left untouched.

    Uses the geometric mean of per-observation constants (least squares in
    log space, appropriate for a multiplicative model). A single observation
    is reproduced exactly.
    """
    if not observations:
        raise ValidationError("calibrate requires at least one observation")
    ks = []
    for spec in observations:
        if spec.measured_watts is None:
            raise ValidationError(
                f"{spec.model_id!r} has no measured_watts; cannot calibrate",
                field_name="measured_watts", record_id=spec.model_id)
        ks.append(spec.measured_watts / _base_power(spec, model))
    if all(k == ks[0] for k in ks):
        k = ks[0]
    else:
        k = math.exp(math.fsum(math.log(k) for k in ks) / len(ks))
    return replace(model, constant_k=k)
