"""Vendor catalog ingestion (CSV/JSON) and power-model persistence.

CSV columns: model_id,platters,rpm,diameter_in,capacity_gb,measured_watts
(last two optional; empty cell = absent). Header row required, UTF-8,
'.' decimal separator. diameter_in is the platter diameter in inches, not
the external form factor. JSON mirrors the same field names as an array
of objects.

Model files are JSON: {version, platter_exp, rpm_exp, diameter_exp,
constant_k?}; current version is 1.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .model_core import DiskSpec, PowerModel, ValidationError

MODEL_FILE_VERSION = 1

CSV_COLUMNS = ("model_id", "platters", "rpm", "diameter_in",
               "capacity_gb", "measured_watts")
REQUIRED_COLUMNS = CSV_COLUMNS[:4]


class CatalogError(ValueError):
    """One or more catalog records failed to parse or validate.

    All row/field-level defects are collected and reported together.
    """

    def __init__(self, path, errors: List[str]):
        self.path = str(path)
        self.errors = list(errors)
        lines = "\n  ".join(self.errors)
        super().__init__(f"{self.path}: {len(self.errors)} error(s):\n  {lines}")


class ModelVersionError(ValueError):
    def __init__(self, path, found, expected=MODEL_FILE_VERSION):
        self.found = found
        self.expected = expected
        super().__init__(f"{path}: unsupported model file version {found!r}, "
                         f"expected {expected}")


@dataclass(frozen=True)
class CatalogFile:
    records: Tuple[DiskSpec, ...]
    source_path: str
    format: str  # "csv" or "json"


def _parse_int(value, field: str, where: str, errors: List[str]) -> Optional[int]:
    try:
        out = int(str(value).strip())
    except (TypeError, ValueError):
        errors.append(f"{where}: field {field!r} is not an integer: {value!r}")
        return None
    return out


def _parse_float(value, field: str, where: str, errors: List[str]) -> Optional[float]:
    try:
        out = float(value)
    except (TypeError, ValueError):
        errors.append(f"{where}: field {field!r} is not a number: {value!r}")
        return None
    if not math.isfinite(out):
        errors.append(f"{where}: field {field!r} is not finite: {value!r}")
        return None
    return out


def _build_record(raw: dict, where: str, errors: List[str]) -> Optional[DiskSpec]:
    model_id = str(raw.get("model_id") or "").strip()
    if not model_id:
        errors.append(f"{where}: missing model_id")
        return None
    platters = _parse_int(raw.get("platters"), "platters", where, errors)
    rpm = _parse_float(raw.get("rpm"), "rpm", where, errors)
    diameter = _parse_float(raw.get("diameter_in"), "diameter_in", where, errors)

    def optional(field: str) -> Optional[float]:
        value = raw.get(field)
        if value is None or (isinstance(value, str) and not value.strip()):
            return None
        return _parse_float(value, field, where, errors)

    capacity = optional("capacity_gb")
    watts = optional("measured_watts")
    if platters is None or rpm is None or diameter is None:
        return None
    try:
        return DiskSpec(model_id=model_id, platters=platters, rpm=rpm,
                        diameter_in=diameter, capacity_gb=capacity,
                        measured_watts=watts)
    except ValidationError as exc:
        errors.append(f"{where}: {exc}")
        return None


def load_catalog(path: Union[str, Path], format: Optional[str] = None) -> CatalogFile:
    """Load and validate a drive catalog; defects are reported all at once."""
    path = Path(path)
    if format is None:
        format = "json" if path.suffix.lower() == ".json" else "csv"
    if format not in ("csv", "json"):
        raise ValidationError(f"unknown catalog format {format!r}",
                              field_name="format")
    errors: List[str] = []
    records: List[DiskSpec] = []

    if format == "csv":
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                raise CatalogError(path, ["empty file (no header row)"])
            missing = [c for c in REQUIRED_COLUMNS if c not in reader.fieldnames]
            if missing:
                raise CatalogError(path, [f"header is missing columns: {missing}"])
            for i, row in enumerate(reader, start=2):
                record = _build_record(row, f"line {i}", errors)
                if record is not None:
                    records.append(record)
    else:
        with open(path, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise CatalogError(
                    path, [f"JSON parse error at line {exc.lineno}, "
                           f"column {exc.colno}: {exc.msg}"]) from exc
        if not isinstance(data, list):
            raise CatalogError(path, ["top-level JSON value must be an array"])
        for i, raw in enumerate(data):
            if not isinstance(raw, dict):
                errors.append(f"record {i}: not an object")
                continue
            record = _build_record(raw, f"record {i}", errors)
            if record is not None:
                records.append(record)

    seen = {}
    for record in records:
        if record.model_id in seen:
            errors.append(f"duplicate model_id {record.model_id!r}")
        seen[record.model_id] = record
    if errors:
        raise CatalogError(path, errors)
    return CatalogFile(records=tuple(records), source_path=str(path), format=format)


def save_catalog(catalog: Tuple[DiskSpec, ...], path: Union[str, Path],
                 format: str = "csv") -> None:
    path = Path(path)
    if format == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for s in catalog:
                writer.writerow([
                    s.model_id, s.platters, repr(s.rpm), repr(s.diameter_in),
                    "" if s.capacity_gb is None else repr(s.capacity_gb),
                    "" if s.measured_watts is None else repr(s.measured_watts)])
    elif format == "json":
        payload = []
        for s in catalog:
            row = {"model_id": s.model_id, "platters": s.platters,
                   "rpm": s.rpm, "diameter_in": s.diameter_in}
            if s.capacity_gb is not None:
                row["capacity_gb"] = s.capacity_gb
            if s.measured_watts is not None:
                row["measured_watts"] = s.measured_watts
            payload.append(row)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    else:
        raise ValidationError(f"unknown catalog format {format!r}",
                              field_name="format")


def save_model(model: PowerModel, path: Union[str, Path]) -> None:
    payload = {"version": MODEL_FILE_VERSION,
               "platter_exp": model.platter_exp,
               "rpm_exp": model.rpm_exp,
               "diameter_exp": model.diameter_exp}
    if model.constant_k is not None:
        payload["constant_k"] = model.constant_k
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_model(path: Union[str, Path]) -> PowerModel:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    version = payload.get("version")
    if version != MODEL_FILE_VERSION:
        raise ModelVersionError(path, version)
    return PowerModel(platter_exp=payload["platter_exp"],
                      rpm_exp=payload["rpm_exp"],
                      diameter_exp=payload["diameter_exp"],
                      constant_k=payload.get("constant_k"))
