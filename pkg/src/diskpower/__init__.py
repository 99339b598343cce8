"""HDD spindle power modeling, drag theory, and watt-budget planning."""

from .catalog_io import (CatalogError, CatalogFile, ModelVersionError,
                         load_catalog, load_model, save_catalog, save_model)
from .drag_theory import (DragParams, QuadratureSettings, SweepResult,
                          analytic_power, drag_force_per_area,
                          drag_params_from_spec, inches_to_meters,
                          numerical_power, recover_exponent, rpm_to_rad_s,
                          tangential_speed)
from .model_core import (EMPIRICAL, THEORETICAL, DiskSpec, PowerModel,
                         ValidationError, calibrate, power_ratio,
                         predict_from_reference, preset, relative_power)
from .planner import (Fleet, PlanProblem, PlanResult, PlanSizeError,
                      UncalibratedModelError, drpm_savings, fleet_power,
                      plan_exact, plan_greedy)
from .surface import SurfaceGrid, build_surface, surface_to_csv
from .verification import VerificationReport, run_verification

__version__ = "0.1.0"
