"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from .. import model_core


class SpecIn(BaseModel):
    model_id: str = "spec"
    platters: int = Field(ge=1)
    rpm: float = Field(gt=0)
    diameter_in: float = Field(gt=0, description="platter diameter, inches")
    capacity_gb: Optional[float] = Field(default=None, ge=0)
    measured_watts: Optional[float] = Field(default=None, gt=0)

    def to_spec(self) -> model_core.DiskSpec:
        return model_core.DiskSpec(
            model_id=self.model_id, platters=self.platters, rpm=self.rpm,
            diameter_in=self.diameter_in, capacity_gb=self.capacity_gb,
            measured_watts=self.measured_watts)


class ModelIn(BaseModel):
    """Exponent selection: a preset name, optionally overridden field by field."""

    preset: Literal["empirical", "theoretical"] = "empirical"
    platter_exp: Optional[float] = None
    rpm_exp: Optional[float] = None
    diameter_exp: Optional[float] = None
    constant_k: Optional[float] = Field(default=None, gt=0)

    def to_model(self) -> model_core.PowerModel:
        base = model_core.preset(self.preset)
        return model_core.PowerModel(
            platter_exp=self.platter_exp if self.platter_exp is not None else base.platter_exp,
            rpm_exp=self.rpm_exp if self.rpm_exp is not None else base.rpm_exp,
            diameter_exp=self.diameter_exp if self.diameter_exp is not None else base.diameter_exp,
            constant_k=self.constant_k)


class ModelOut(BaseModel):
    platter_exp: float
    rpm_exp: float
    diameter_exp: float
    constant_k: Optional[float] = None

    @classmethod
    def from_model(cls, m: model_core.PowerModel) -> "ModelOut":
        return cls(platter_exp=m.platter_exp, rpm_exp=m.rpm_exp,
                   diameter_exp=m.diameter_exp, constant_k=m.constant_k)


class RatioRequest(BaseModel):
    a: SpecIn
    b: SpecIn
    model: ModelIn = ModelIn()
    ref_watts: Optional[float] = Field(default=None, gt=0)


class RatioResponse(BaseModel):
    ratio: float
    predicted_watts: Optional[float] = None


class CalibrateRequest(BaseModel):
    records: List[SpecIn]
    model: ModelIn = ModelIn()


class Residual(BaseModel):
    model_id: str
    measured_watts: float
    predicted_watts: float
    residual_pct: float


class CalibrateResponse(BaseModel):
    model: ModelOut
    residuals: List[Residual]


class SurfaceRequest(BaseModel):
    rpm_min: float = Field(gt=0)
    rpm_max: float = Field(gt=0)
    rpm_steps: int = Field(ge=2)
    diameter_min: float = Field(gt=0)
    diameter_max: float = Field(gt=0)
    diameter_steps: int = Field(ge=2)
    platters: int = Field(default=1, ge=1)
    model: ModelIn = ModelIn()


class SurfaceResponse(BaseModel):
    rpm_axis: List[float]
    diameter_axis: List[float]
    values: List[List[float]]  # row = rpm index, column = diameter index
    model: ModelOut


class VerifyRequest(BaseModel):
    grids: List[int] = [32, 64, 128, 256, 512]
    multipliers: List[float] = [1.0, 2.0, 4.0, 8.0, 16.0]
    cells: int = Field(default=512, ge=1)


class VerifyResponse(BaseModel):
    passed: bool
    omega_exponent: float
    radius_exponent: float
    omega_exponent_numerical: float
    radius_exponent_numerical: float
    convergence: List[Tuple[int, float]]
    failures: List[str]


class FleetEntryIn(BaseModel):
    spec: SpecIn
    count: int = Field(ge=0)


class FleetRequest(BaseModel):
    entries: List[FleetEntryIn]
    model: ModelIn


class FleetSubtotal(BaseModel):
    model_id: str
    count: int
    watts_per_drive: float
    subtotal_watts: float


class FleetResponse(BaseModel):
    subtotals: List[FleetSubtotal]
    total_watts: float


class PlanRequest(BaseModel):
    catalog: List[SpecIn]
    budget_watts: float = Field(gt=0)
    max_count_per_model: int = Field(ge=1)
    method: Literal["greedy", "exact"] = "greedy"
    model: ModelIn


class PlanLine(BaseModel):
    model_id: str
    count: int
    watts: float
    gb: float


class PlanResponse(BaseModel):
    method: str
    lines: List[PlanLine]
    total_watts: float
    total_gb: float
