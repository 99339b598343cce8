"""Thin client over the service: in-process by default, HTTP with a URL.

The CLI talks to the service through this one seam, so local invocations
and a remote server return identical payloads.
"""

from __future__ import annotations

from typing import Optional, Type, TypeVar

from pydantic import BaseModel

from .service import app as service_app
from .service import schemas

R = TypeVar("R", bound=BaseModel)


class ClientError(Exception):
    def __init__(self, status_code: int, detail: str):
        super().__init__(detail)
        self.status_code = status_code
        self.detail = detail


_LOCAL_HANDLERS = {
    "/ratio": service_app.compute_ratio,
    "/calibrate": service_app.compute_calibration,
    "/surface": service_app.compute_surface,
    "/verify": service_app.compute_verification,
    "/fleet": service_app.compute_fleet,
    "/plan": service_app.compute_plan,
}


class ServiceClient:
    """Calls endpoint handlers directly, or POSTs to base_url when given."""

    def __init__(self, base_url: Optional[str] = None):
        self.base_url = base_url.rstrip("/") if base_url else None

    def _call(self, path: str, request: BaseModel, response_cls: Type[R]) -> R:
        if self.base_url is None:
            try:
                return _LOCAL_HANDLERS[path](request)
            except service_app.ServiceError as exc:
                raise ClientError(exc.status_code, exc.detail) from exc
        import httpx
        resp = httpx.post(self.base_url + path, json=request.model_dump(),
                          timeout=120.0)
        if resp.status_code >= 400:
            try:
                detail = resp.json().get("detail", resp.text)
            except ValueError:
                detail = resp.text
            raise ClientError(resp.status_code, str(detail))
        return response_cls.model_validate(resp.json())

    def ratio(self, req: schemas.RatioRequest) -> schemas.RatioResponse:
        return self._call("/ratio", req, schemas.RatioResponse)

    def calibrate(self, req: schemas.CalibrateRequest) -> schemas.CalibrateResponse:
        return self._call("/calibrate", req, schemas.CalibrateResponse)

    def surface(self, req: schemas.SurfaceRequest) -> schemas.SurfaceResponse:
        return self._call("/surface", req, schemas.SurfaceResponse)

    def verify(self, req: schemas.VerifyRequest) -> schemas.VerifyResponse:
        return self._call("/verify", req, schemas.VerifyResponse)

    def fleet(self, req: schemas.FleetRequest) -> schemas.FleetResponse:
        return self._call("/fleet", req, schemas.FleetResponse)

    def plan(self, req: schemas.PlanRequest) -> schemas.PlanResponse:
        return self._call("/plan", req, schemas.PlanResponse)
