"""Command-line front end; a thin client over the service layer.

Exit codes: 0 success, 2 usage error, 3 validation or I/O error,
4 verification tolerance failure.
"""

from __future__ import annotations

import json
import sys
from typing import List, Optional, Tuple

import click

from . import catalog_io
from .client import ClientError, ServiceClient
from .model_core import ValidationError
from .service import schemas

EXIT_VALIDATION = 3
EXIT_TOLERANCE = 4

SPEC_KEYS = {"n": "platters", "rpm": "rpm", "d": "diameter_in",
             "gb": "capacity_gb", "watts": "measured_watts"}


def fmt(value: float, precision: int) -> str:
    return f"{value:#.{precision}g}"


def parse_spec_flag(text: str, model_id: str) -> schemas.SpecIn:
    """Parse a compact k=v spec: n=1,rpm=15098,d=2.6[,gb=...][,watts=...]."""
    fields = {}
    for part in text.split(","):
        if "=" not in part:
            raise click.BadParameter(f"expected key=value, got {part!r}")
        key, _, value = part.partition("=")
        key = key.strip().lower()
        if key not in SPEC_KEYS:
            raise click.BadParameter(
                f"unknown spec key {key!r}; expected one of {sorted(SPEC_KEYS)}")
        try:
            fields[SPEC_KEYS[key]] = int(value) if key == "n" else float(value)
        except ValueError:
            raise click.BadParameter(f"bad value for {key!r}: {value!r}")
    for required in ("platters", "rpm", "diameter_in"):
        if required not in fields:
            raise click.BadParameter(f"spec is missing {required} "
                                     f"(keys n=, rpm=, d=): {text!r}")
    return schemas.SpecIn(model_id=model_id, **fields)


def model_options(fn):
    fn = click.option("--exponents", type=click.Choice(["empirical", "theoretical"]),
                      default="empirical", show_default=True,
                      help="Exponent preset: 2.8/4.6 or the integer 3/5 set.")(fn)
    fn = click.option("--platter-exp", type=float, default=None,
                      help="Override the platter exponent.")(fn)
    fn = click.option("--rpm-exp", type=float, default=None,
                      help="Override the RPM exponent.")(fn)
    fn = click.option("--diameter-exp", type=float, default=None,
                      help="Override the diameter exponent.")(fn)
    fn = click.option("--model-file", type=click.Path(), default=None,
                      help="Load exponents and constant_k from a saved model file.")(fn)
    return fn


def build_model_in(exponents: str, platter_exp, rpm_exp, diameter_exp,
                   model_file) -> schemas.ModelIn:
    if model_file is not None:
        try:
            loaded = catalog_io.load_model(model_file)
        except (OSError, catalog_io.ModelVersionError, ValidationError, KeyError) as exc:
            fail_validation(f"cannot load model file {model_file}: {exc}")
        return schemas.ModelIn(
            preset=exponents,
            platter_exp=loaded.platter_exp if platter_exp is None else platter_exp,
            rpm_exp=loaded.rpm_exp if rpm_exp is None else rpm_exp,
            diameter_exp=loaded.diameter_exp if diameter_exp is None else diameter_exp,
            constant_k=loaded.constant_k)
    return schemas.ModelIn(preset=exponents, platter_exp=platter_exp,
                           rpm_exp=rpm_exp, diameter_exp=diameter_exp)


def fail_validation(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_VALIDATION)


def call(fn, request):
    try:
        return fn(request)
    except ClientError as exc:
        fail_validation(exc.detail)


def load_catalog_or_fail(path: str) -> catalog_io.CatalogFile:
    try:
        return catalog_io.load_catalog(path)
    except FileNotFoundError:
        fail_validation(f"catalog file not found: {path}")
    except catalog_io.CatalogError as exc:
        fail_validation(str(exc))


def emit(ctx, payload: dict, text_lines: List[str]) -> None:
    if ctx.obj["format"] == "json":
        click.echo(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            click.echo(line)


@click.group()
@click.option("--url", default=None,
              help="Base URL of a running diskpower service; in-process if omitted.")
@click.option("--format", "output_format", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
@click.option("--precision", type=int, default=6, show_default=True,
              help="Significant digits for numeric text output.")
@click.pass_context
def main(ctx, url, output_format, precision):
    """HDD spindle power: ratios, calibration, drag-theory checks, planning."""
    ctx.ensure_object(dict)
    ctx.obj["client"] = ServiceClient(url)
    ctx.obj["format"] = output_format
    ctx.obj["precision"] = precision


def _run_ratio(ctx, a, b, ref_watts, exponents, platter_exp, rpm_exp,
               diameter_exp, model_file):
    spec_a = parse_spec_flag(a, "a")
    spec_b = parse_spec_flag(b, "b")
    model = build_model_in(exponents, platter_exp, rpm_exp, diameter_exp, model_file)
    req = schemas.RatioRequest(a=spec_a, b=spec_b, model=model, ref_watts=ref_watts)
    resp = call(ctx.obj["client"].ratio, req)
    p = ctx.obj["precision"]
    lines = [f"ratio: {fmt(resp.ratio, p)}"]
    if resp.predicted_watts is not None:
        lines.append(f"predicted_watts: {fmt(resp.predicted_watts, p)}")
    emit(ctx, resp.model_dump(), lines)


@main.command()
@click.option("--a", required=True, help="Reference spec, e.g. n=1,rpm=15098,d=2.6")
@click.option("--b", required=True, help="Target spec, same k=v format.")
@click.option("--ref-watts", type=float, default=None,
              help="Measured watts of --a; adds a predicted-watts line for --b.")
@model_options
@click.pass_context
def ratio(ctx, a, b, ref_watts, exponents, platter_exp, rpm_exp, diameter_exp,
          model_file):
    """Power ratio of drive b over drive a (the constant cancels)."""
    _run_ratio(ctx, a, b, ref_watts, exponents, platter_exp, rpm_exp,
               diameter_exp, model_file)


@main.command()
@click.option("--a", required=True, help="Reference spec, e.g. n=1,rpm=15098,d=2.6")
@click.option("--b", required=True, help="Target spec, same k=v format.")
@click.option("--ref-watts", type=float, required=True,
              help="Measured watts of --a.")
@model_options
@click.pass_context
def estimate(ctx, a, b, ref_watts, exponents, platter_exp, rpm_exp,
             diameter_exp, model_file):
    """Estimate absolute watts of drive b from a measured reference a."""
    _run_ratio(ctx, a, b, ref_watts, exponents, platter_exp, rpm_exp,
               diameter_exp, model_file)


@main.command()
@click.argument("catalog", type=click.Path())
@click.argument("output", type=click.Path())
@model_options
@click.pass_context
def calibrate(ctx, catalog, output, exponents, platter_exp, rpm_exp,
              diameter_exp, model_file):
    """Fit constant_k to a catalog's measured watts and save the model."""
    cat = load_catalog_or_fail(catalog)
    model = build_model_in(exponents, platter_exp, rpm_exp, diameter_exp, model_file)
    records = [schemas.SpecIn(model_id=s.model_id, platters=s.platters, rpm=s.rpm,
                              diameter_in=s.diameter_in, capacity_gb=s.capacity_gb,
                              measured_watts=s.measured_watts)
               for s in cat.records]
    resp = call(ctx.obj["client"].calibrate,
                schemas.CalibrateRequest(records=records, model=model))
    from .model_core import PowerModel
    calibrated = PowerModel(platter_exp=resp.model.platter_exp,
                            rpm_exp=resp.model.rpm_exp,
                            diameter_exp=resp.model.diameter_exp,
                            constant_k=resp.model.constant_k)
    try:
        catalog_io.save_model(calibrated, output)
    except OSError as exc:
        fail_validation(f"cannot write model file {output}: {exc}")
    p = ctx.obj["precision"]
    lines = [f"constant_k: {calibrated.constant_k!r}",
             f"wrote {output}"]
    for r in resp.residuals:
        lines.append(f"{r.model_id}: measured {fmt(r.measured_watts, p)} W, "
                     f"predicted {fmt(r.predicted_watts, p)} W, "
                     f"residual {r.residual_pct:+.4f}%")
    emit(ctx, {"model": resp.model.model_dump(),
               "residuals": [r.model_dump() for r in resp.residuals],
               "output": output}, lines)


@main.command()
@click.option("--rpm-min", type=float, required=True)
@click.option("--rpm-max", type=float, required=True)
@click.option("--rpm-steps", type=int, default=20, show_default=True)
@click.option("--diameter-min", type=float, required=True)
@click.option("--diameter-max", type=float, required=True)
@click.option("--diameter-steps", type=int, default=20, show_default=True)
@click.option("--platters", type=int, default=1, show_default=True)
@click.option("--output", "-o", type=click.Path(), default="-",
              help="Output CSV path ('-' for stdout).")
@model_options
@click.pass_context
def surface(ctx, rpm_min, rpm_max, rpm_steps, diameter_min, diameter_max,
            diameter_steps, platters, output, exponents, platter_exp, rpm_exp,
            diameter_exp, model_file):
    """Emit the power surface over (rpm, diameter) as plot-ready CSV."""
    if rpm_max <= rpm_min:
        raise click.BadParameter("--rpm-max must exceed --rpm-min")
    if diameter_max <= diameter_min:
        raise click.BadParameter("--diameter-max must exceed --diameter-min")
    if rpm_steps < 2 or diameter_steps < 2:
        raise click.BadParameter("steps must be >= 2")
    model = build_model_in(exponents, platter_exp, rpm_exp, diameter_exp, model_file)
    req = schemas.SurfaceRequest(
        rpm_min=rpm_min, rpm_max=rpm_max, rpm_steps=rpm_steps,
        diameter_min=diameter_min, diameter_max=diameter_max,
        diameter_steps=diameter_steps, platters=platters, model=model)
    resp = call(ctx.obj["client"].surface, req)
    from .surface import SurfaceGrid, surface_to_csv
    from .model_core import PowerModel
    grid = SurfaceGrid(rpm_axis=tuple(resp.rpm_axis),
                       diameter_axis=tuple(resp.diameter_axis),
                       values=tuple(tuple(row) for row in resp.values),
                       model=PowerModel(platter_exp=resp.model.platter_exp,
                                        rpm_exp=resp.model.rpm_exp,
                                        diameter_exp=resp.model.diameter_exp,
                                        constant_k=resp.model.constant_k))
    csv_text = surface_to_csv(grid)
    if output == "-":
        click.echo(csv_text, nl=False)
    else:
        try:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(csv_text)
        except OSError as exc:
            fail_validation(f"cannot write {output}: {exc}")
        click.echo(f"wrote {len(resp.rpm_axis)}x{len(resp.diameter_axis)} "
                   f"surface to {output}")


@main.command()
@click.option("--cells", type=int, default=512, show_default=True,
              help="Quadrature cells per side for the numerical sweeps.")
@click.option("--grids", default="32,64,128,256,512", show_default=True,
              help="Comma-separated grid sizes for the convergence check.")
@click.option("--multipliers", default="1,2,4,8,16", show_default=True,
              help="Comma-separated sweep multipliers (need >= 3 distinct).")
@click.pass_context
def verify(ctx, cells, grids, multipliers):
    """Check quadrature convergence and omega/radius exponent recovery."""
    try:
        grid_list = [int(x) for x in grids.split(",") if x.strip()]
        mult_list = [float(x) for x in multipliers.split(",") if x.strip()]
    except ValueError:
        raise click.BadParameter("grids and multipliers must be numeric lists")
    if len(set(mult_list)) < 3:
        raise click.UsageError("need at least 3 distinct sweep multipliers")
    if cells < 1 or any(g < 1 for g in grid_list):
        raise click.BadParameter("cell counts must be positive")
    req = schemas.VerifyRequest(grids=grid_list, multipliers=mult_list, cells=cells)
    resp = call(ctx.obj["client"].verify, req)
    lines = [
        f"omega exponent {resp.omega_exponent:.3f} "
        f"(numerical {resp.omega_exponent_numerical:.6f})",
        f"radius exponent {resp.radius_exponent:.3f} "
        f"(numerical {resp.radius_exponent_numerical:.6f})",
    ]
    for n, err in resp.convergence:
        lines.append(f"quadrature {n}x{n}: relative error {err:.3e}")
    lines.append("PASS" if resp.passed else "FAIL")
    lines.extend(f"  {f}" for f in resp.failures)
    emit(ctx, resp.model_dump(), lines)
    if not resp.passed:
        sys.exit(EXIT_TOLERANCE)


def _catalog_to_specins(cat: catalog_io.CatalogFile) -> List[schemas.SpecIn]:
    return [schemas.SpecIn(model_id=s.model_id, platters=s.platters, rpm=s.rpm,
                           diameter_in=s.diameter_in, capacity_gb=s.capacity_gb,
                           measured_watts=s.measured_watts)
            for s in cat.records]


def _calibrated_model_in(cat: catalog_io.CatalogFile, model: schemas.ModelIn,
                         client: ServiceClient) -> schemas.ModelIn:
    """Absolute watts need constant_k; calibrate from catalog watts if possible."""
    if model.constant_k is not None:
        return model
    if any(s.measured_watts is not None for s in cat.records):
        resp = call(client.calibrate, schemas.CalibrateRequest(
            records=_catalog_to_specins(cat), model=model))
        return model.model_copy(update={"constant_k": resp.model.constant_k})
    fail_validation(
        "absolute watts need a calibrated model: pass --model-file with a "
        "calibrated model (see the calibrate command) or include "
        "measured_watts in the catalog")


@main.command()
@click.argument("catalog", type=click.Path())
@click.option("--count", "counts", multiple=True,
              help="model_id=COUNT; repeatable. Omitted models count 0.")
@model_options
@click.pass_context
def fleet(ctx, catalog, counts, exponents, platter_exp, rpm_exp, diameter_exp,
          model_file):
    """Total spindle watts of a drive population."""
    cat = load_catalog_or_fail(catalog)
    by_id = {s.model_id: s for s in cat.records}
    parsed: List[Tuple[str, int]] = []
    for item in counts:
        model_id, _, value = item.partition("=")
        if model_id not in by_id:
            fail_validation(f"--count names unknown model_id {model_id!r}")
        try:
            n = int(value)
        except ValueError:
            raise click.BadParameter(f"bad count in {item!r}")
        if n < 0:
            raise click.BadParameter(f"count must be nonnegative in {item!r}")
        parsed.append((model_id, n))
    model = build_model_in(exponents, platter_exp, rpm_exp, diameter_exp, model_file)
    model = _calibrated_model_in(cat, model, ctx.obj["client"])
    entries = [schemas.FleetEntryIn(
        spec=_catalog_to_specins(cat)[cat.records.index(by_id[mid])], count=n)
        for mid, n in parsed]
    resp = call(ctx.obj["client"].fleet,
                schemas.FleetRequest(entries=entries, model=model))
    p = ctx.obj["precision"]
    lines = [f"{s.model_id}: {s.count} x {fmt(s.watts_per_drive, p)} W = "
             f"{fmt(s.subtotal_watts, p)} W" for s in resp.subtotals]
    lines.append(f"total: {fmt(resp.total_watts, p)} W")
    emit(ctx, resp.model_dump(), lines)


@main.command()
@click.argument("catalog", type=click.Path())
@click.option("--budget", type=float, required=True, help="Watt budget.")
@click.option("--max-count", type=int, default=10, show_default=True,
              help="Per-model count cap.")
@click.option("--method", type=click.Choice(["greedy", "exact"]),
              default="greedy", show_default=True)
@model_options
@click.pass_context
def plan(ctx, catalog, budget, max_count, method, exponents, platter_exp,
         rpm_exp, diameter_exp, model_file):
    """Maximize GB under a watt budget over a drive catalog."""
    if budget <= 0:
        raise click.BadParameter("--budget must be positive")
    cat = load_catalog_or_fail(catalog)
    model = build_model_in(exponents, platter_exp, rpm_exp, diameter_exp, model_file)
    model = _calibrated_model_in(cat, model, ctx.obj["client"])
    req = schemas.PlanRequest(catalog=_catalog_to_specins(cat),
                              budget_watts=budget,
                              max_count_per_model=max_count,
                              method=method, model=model)
    resp = call(ctx.obj["client"].plan, req)
    p = ctx.obj["precision"]
    lines = [f"method: {resp.method}"]
    for line in resp.lines:
        lines.append(f"{line.model_id}: count {line.count}, "
                     f"{fmt(line.gb, p)} GB, {fmt(line.watts, p)} W")
    lines.append(f"total: {fmt(resp.total_gb, p)} GB, "
                 f"{fmt(resp.total_watts, p)} W "
                 f"(budget {fmt(budget, p)} W)")
    emit(ctx, resp.model_dump(), lines)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn
    uvicorn.run("diskpower.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
