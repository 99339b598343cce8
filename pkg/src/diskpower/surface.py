"""Power-surface grids over (rpm, diameter) for external plotting.

The surface is a single monotone "power hill": values strictly increase
toward the high-RPM, large-diameter corner. Emitted CSV layout: first row
is the diameter axis, first column is the rpm axis.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .model_core import DiskSpec, PowerModel, ValidationError, relative_power


@dataclass(frozen=True)
class SurfaceGrid:
    rpm_axis: Tuple[float, ...]
    diameter_axis: Tuple[float, ...]
    values: Tuple[Tuple[float, ...], ...]  # row = rpm index, column = diameter index
    model: PowerModel

    def __post_init__(self):
        if len(self.values) != len(self.rpm_axis) or any(
                len(row) != len(self.diameter_axis) for row in self.values):
            raise ValidationError("values dimensions do not match axes",
                                  field_name="values")


def linspace(lo: float, hi: float, steps: int) -> List[float]:
    if steps < 2:
        raise ValidationError("axis needs at least 2 steps", field_name="steps")
    if not (0 < lo < hi):
        raise ValidationError(
            f"axis range must be ascending and positive, got [{lo}, {hi}]",
            field_name="range")
    step = (hi - lo) / (steps - 1)
    return [lo + i * step for i in range(steps)]


def build_surface(rpm_axis: Sequence[float], diameter_axis: Sequence[float],
                  model: PowerModel, platters: int = 1) -> SurfaceGrid:
    if list(rpm_axis) != sorted(set(rpm_axis)) or min(rpm_axis) <= 0:
        raise ValidationError("rpm_axis must be strictly ascending and positive",
                              field_name="rpm_axis")
    if list(diameter_axis) != sorted(set(diameter_axis)) or min(diameter_axis) <= 0:
        raise ValidationError(
            "diameter_axis must be strictly ascending and positive",
            field_name="diameter_axis")
    values = tuple(
        tuple(relative_power(
            DiskSpec(model_id="grid", platters=platters, rpm=rpm, diameter_in=d),
            model) for d in diameter_axis)
        for rpm in rpm_axis)
    return SurfaceGrid(rpm_axis=tuple(rpm_axis),
                       diameter_axis=tuple(diameter_axis),
                       values=values, model=model)


def surface_to_csv(grid: SurfaceGrid) -> str:
    """Plot-ready CSV: header row = diameter axis, first column = rpm axis."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rpm\\diameter_in"] + [repr(d) for d in grid.diameter_axis])
    for rpm, row in zip(grid.rpm_axis, grid.values):
        writer.writerow([repr(rpm)] + [repr(v) for v in row])
    return buf.getvalue()
