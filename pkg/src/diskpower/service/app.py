"""FastAPI service exposing the disk-power library.

Endpoint handlers are plain sync functions over pydantic models, so the
CLI can call them in-process without a running server.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import model_core, planner, surface, verification
from ..model_core import ValidationError
from ..planner import PlanSizeError, UncalibratedModelError
from . import schemas

app = FastAPI(title="diskpower",
              description="HDD spindle power modeling, drag-theory "
                          "verification, and watt-budget capacity planning")


class ServiceError(Exception):
    """Carries the HTTP status a handler error maps to."""

    def __init__(self, status_code: int, detail: str):
        super().__init__(detail)
        self.status_code = status_code
        self.detail = detail


def _wrap(fn, *args):
    try:
        return fn(*args)
    except (ValidationError, PlanSizeError) as exc:
        raise ServiceError(422, str(exc)) from exc
    except UncalibratedModelError as exc:
        raise ServiceError(409, str(exc)) from exc


@app.exception_handler(ServiceError)
async def _service_error_handler(request, exc: ServiceError):
    from fastapi.responses import JSONResponse
    return JSONResponse(status_code=exc.status_code,
                        content={"detail": exc.detail})


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/ratio", response_model=schemas.RatioResponse)
def compute_ratio(req: schemas.RatioRequest) -> schemas.RatioResponse:
    def run():
        model = req.model.to_model()
        a, b = req.a.to_spec(), req.b.to_spec()
        ratio = model_core.power_ratio(a, b, model)
        predicted = None
        if req.ref_watts is not None:
            predicted = model_core.predict_from_reference(a, req.ref_watts, b, model)
        return schemas.RatioResponse(ratio=ratio, predicted_watts=predicted)
    return _wrap(run)


@app.post("/calibrate", response_model=schemas.CalibrateResponse)
def compute_calibration(req: schemas.CalibrateRequest) -> schemas.CalibrateResponse:
    def run():
        base = req.model.to_model()
        specs = [r.to_spec() for r in req.records]
        with_watts = [s for s in specs if s.measured_watts is not None]
        if not with_watts:
            raise ValidationError("no record has measured_watts; nothing to "
                                  "calibrate against")
        calibrated = model_core.calibrate(with_watts, base)
        residuals = []
        for s in with_watts:
            predicted = model_core.relative_power(s, calibrated)
            residuals.append(schemas.Residual(
                model_id=s.model_id, measured_watts=s.measured_watts,
                predicted_watts=predicted,
                residual_pct=(predicted - s.measured_watts) / s.measured_watts * 100.0))
        return schemas.CalibrateResponse(
            model=schemas.ModelOut.from_model(calibrated), residuals=residuals)
    return _wrap(run)


@app.post("/surface", response_model=schemas.SurfaceResponse)
def compute_surface(req: schemas.SurfaceRequest) -> schemas.SurfaceResponse:
    def run():
        if req.rpm_max <= req.rpm_min:
            raise ValidationError("rpm range is inverted or empty",
                                  field_name="rpm_max")
        if req.diameter_max <= req.diameter_min:
            raise ValidationError("diameter range is inverted or empty",
                                  field_name="diameter_max")
        model = req.model.to_model()
        grid = surface.build_surface(
            surface.linspace(req.rpm_min, req.rpm_max, req.rpm_steps),
            surface.linspace(req.diameter_min, req.diameter_max, req.diameter_steps),
            model, platters=req.platters)
        return schemas.SurfaceResponse(
            rpm_axis=list(grid.rpm_axis),
            diameter_axis=list(grid.diameter_axis),
            values=[list(row) for row in grid.values],
            model=schemas.ModelOut.from_model(model))
    return _wrap(run)


@app.post("/verify", response_model=schemas.VerifyResponse)
def compute_verification(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    def run():
        report = verification.run_verification(
            grids=req.grids, multipliers=req.multipliers, cells=req.cells)
        return schemas.VerifyResponse(
            passed=report.passed,
            omega_exponent=report.omega_exponent,
            radius_exponent=report.radius_exponent,
            omega_exponent_numerical=report.omega_exponent_numerical,
            radius_exponent_numerical=report.radius_exponent_numerical,
            convergence=list(report.convergence),
            failures=list(report.failures))
    return _wrap(run)


@app.post("/fleet", response_model=schemas.FleetResponse)
def compute_fleet(req: schemas.FleetRequest) -> schemas.FleetResponse:
    def run():
        model = req.model.to_model()
        entries = [(e.spec.to_spec(), e.count) for e in req.entries]
        fleet = planner.Fleet(entries=tuple(entries))
        total = planner.fleet_power(fleet, model)
        subtotals = []
        for spec, count in entries:
            per_drive = model_core.relative_power(spec, model)
            subtotals.append(schemas.FleetSubtotal(
                model_id=spec.model_id, count=count,
                watts_per_drive=per_drive, subtotal_watts=count * per_drive))
        return schemas.FleetResponse(subtotals=subtotals, total_watts=total)
    return _wrap(run)


@app.post("/plan", response_model=schemas.PlanResponse)
def compute_plan(req: schemas.PlanRequest) -> schemas.PlanResponse:
    def run():
        model = req.model.to_model()
        problem = planner.PlanProblem(
            catalog=tuple(s.to_spec() for s in req.catalog),
            budget_watts=req.budget_watts,
            max_count_per_model=req.max_count_per_model,
            model=model)
        solve = planner.plan_exact if req.method == "exact" else planner.plan_greedy
        result = solve(problem)
        lines = []
        for spec, count in zip(problem.catalog, result.counts):
            per_drive = model_core.relative_power(spec, model)
            lines.append(schemas.PlanLine(
                model_id=spec.model_id, count=count,
                watts=count * per_drive, gb=count * spec.capacity_gb))
        return schemas.PlanResponse(method=result.method, lines=lines,
                                    total_watts=result.total_watts,
                                    total_gb=result.total_gb)
    return _wrap(run)
