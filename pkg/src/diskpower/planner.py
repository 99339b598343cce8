"""Fleet power aggregation, DRPM spin-down savings, and watt-budget planning.

Spindle power is linear in drive count, so fleet totals are plain sums.
Planning maximizes GB under a watt budget: an unbounded knapsack with a
per-model cap, solved greedily by GB-per-watt density plus a bounded exact
enumeration that serves as the greedy's oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .model_core import DiskSpec, PowerModel, ValidationError, relative_power

EXACT_MAX_MODELS = 6
EXACT_MAX_COUNT = 12

# Slack for float watt sums when checking counts against the budget.
_BUDGET_EPS = 1e-9


class UncalibratedModelError(ValueError):
    """Absolute watts need a calibrated model (constant_k)."""


class PlanSizeError(ValueError):
    """Instance exceeds the exact enumerator's bounds; use plan_greedy."""


@dataclass(frozen=True)
class Fleet:
    """Multiset of (spec, count): a SAN/JBOD/RAID drive population."""

    entries: Tuple[Tuple[DiskSpec, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(e) for e in self.entries))
        for spec, count in self.entries:
            if count < 0:
                raise ValidationError(
                    f"{spec.model_id!r}: fleet count must be nonnegative, got {count}",
                    field_name="count", record_id=spec.model_id)


@dataclass(frozen=True)
class PlanProblem:
    catalog: Tuple[DiskSpec, ...]
    budget_watts: float
    max_count_per_model: int
    model: PowerModel

    def __post_init__(self):
        object.__setattr__(self, "catalog", tuple(self.catalog))
        for spec in self.catalog:
            if spec.capacity_gb is None or spec.capacity_gb <= 0:
                raise ValidationError(
                    f"{spec.model_id!r}: planning requires capacity_gb > 0",
                    field_name="capacity_gb", record_id=spec.model_id)
        if not (self.budget_watts > 0 and math.isfinite(self.budget_watts)):
            raise ValidationError("budget_watts must be positive",
                                  field_name="budget_watts")
        if self.max_count_per_model < 1:
            raise ValidationError("max_count_per_model must be >= 1",
                                  field_name="max_count_per_model")
        if not self.model.calibrated:
            raise UncalibratedModelError(
                "PlanProblem needs a calibrated PowerModel (constant_k) "
                "so drive power is in watts; run calibrate first")


@dataclass(frozen=True)
class PlanResult:
    counts: Tuple[int, ...]  # aligned with the problem's catalog order
    total_watts: float
    total_gb: float
    method: str


def fleet_power(fleet: Fleet, model: PowerModel) -> float:
    """Total spindle watts: sum of count * per-drive power."""
    if not model.calibrated:
        raise UncalibratedModelError(
            "fleet_power needs a calibrated PowerModel (constant_k) "
            "to report absolute watts; run calibrate first")
    return math.fsum(count * relative_power(spec, model)
                     for spec, count in fleet.entries)


def drpm_savings(spec: DiskSpec, reduced_rpm: float,
                 model: PowerModel) -> float:
    """Fractional power saving from spinning down to reduced_rpm.

    Only the speed ratio enters, so the result is independent of
    constant_k, diameter, and platter count.
    """
    if not (reduced_rpm > 0 and math.isfinite(reduced_rpm)):
        raise ValidationError(f"reduced_rpm must be positive, got {reduced_rpm!r}",
                              field_name="reduced_rpm")
    if reduced_rpm > spec.rpm:
        raise ValidationError(
            f"reduced_rpm {reduced_rpm} exceeds {spec.model_id!r} nominal rpm "
            f"{spec.rpm}; a speed-up is not a saving", field_name="reduced_rpm")
    return 1.0 - (reduced_rpm / spec.rpm) ** model.rpm_exp


def _per_drive_watts(p: PlanProblem) -> List[float]:
    return [relative_power(spec, p.model) for spec in p.catalog]


def _totals(p: PlanProblem, counts: Sequence[int]) -> Tuple[float, float]:
    watts = _per_drive_watts(p)
    total_watts = math.fsum(c * w for c, w in zip(counts, watts))
    total_gb = math.fsum(c * s.capacity_gb for c, s in zip(counts, p.catalog))
    return total_watts, total_gb


def _max_affordable(budget: float, watts: float, cap: int) -> int:
    c = min(cap, max(0, int(math.floor(budget / watts))))
    if c < cap and (c + 1) * watts <= budget:
        c += 1  # floor lost to division rounding
    while c > 0 and c * watts > budget:
        c -= 1
    return c


def plan_greedy(p: PlanProblem) -> PlanResult:
    """Fill by GB-per-watt density (ties: lower watts, then model_id)."""
    watts = _per_drive_watts(p)
    order = sorted(range(len(p.catalog)),
                   key=lambda i: (-p.catalog[i].capacity_gb / watts[i],
                                  watts[i], p.catalog[i].model_id))
    counts = [0] * len(p.catalog)
    remaining = p.budget_watts
    for i in order:
        c = _max_affordable(remaining, watts[i], p.max_count_per_model)
        counts[i] = c
        remaining -= c * watts[i]
    total_watts, total_gb = _totals(p, counts)
    # Exact resummation can exceed the sequential remainder by a few ulps.
    for i in reversed(order):
        while counts[i] > 0 and total_watts > p.budget_watts:
            counts[i] -= 1
            total_watts, total_gb = _totals(p, counts)
    return PlanResult(counts=tuple(counts), total_watts=total_watts,
                      total_gb=total_gb, method="greedy")


def plan_exact(p: PlanProblem) -> PlanResult:
    """Exhaustive optimum over count vectors, for small instances.

    Maximizes total GB within the budget; ties broken by lower watts, then
    by lexicographically smallest count vector in catalog order. A fractional
    relaxation bound prunes branches that cannot strictly beat the incumbent,
    so tie candidates are never cut.
    """
    n = len(p.catalog)
    if n > EXACT_MAX_MODELS or p.max_count_per_model > EXACT_MAX_COUNT:
        raise PlanSizeError(
            f"plan_exact is bounded to <= {EXACT_MAX_MODELS} models and "
            f"max_count_per_model <= {EXACT_MAX_COUNT} "
            f"(got {n} models, cap {p.max_count_per_model}); use plan_greedy")
    watts = _per_drive_watts(p)
    gb = [spec.capacity_gb for spec in p.catalog]
    # Search densest-first so the bound tightens early.
    order = sorted(range(n), key=lambda i: (-gb[i] / watts[i], watts[i]))

    best_key = None
    best_counts: Tuple[int, ...] = tuple([0] * n)

    def bound(level: int, budget: float) -> float:
        ub = 0.0
        for i in order[level:]:
            take = min(float(p.max_count_per_model), budget / watts[i])
            ub += take * gb[i]
            budget -= take * watts[i]
            if budget <= 0:
                break
        return ub

    def dfs(level: int, budget: float, gb_so_far: float, counts: List[int]):
        nonlocal best_key, best_counts
        if level == n:
            # Exact summation at the leaf so ties compare consistently
            # regardless of the path the search took.
            watts_used = math.fsum(counts[j] * watts[j] for j in range(n))
            if watts_used > p.budget_watts:
                return
            gb_total = math.fsum(counts[j] * gb[j] for j in range(n))
            key = (-gb_total, watts_used, tuple(counts))
            if best_key is None or key < best_key:
                best_key = key
                best_counts = tuple(counts)
            return
        if best_key is not None and gb_so_far + bound(level, budget) < -best_key[0] - _BUDGET_EPS:
            return
        i = order[level]
        cmax = _max_affordable(budget, watts[i], p.max_count_per_model)
        for c in range(cmax, -1, -1):
            counts[i] = c
            dfs(level + 1, budget - c * watts[i], gb_so_far + c * gb[i], counts)
        counts[i] = 0

    dfs(0, p.budget_watts, 0.0, [0] * n)
    total_watts, total_gb = _totals(p, best_counts)
    return PlanResult(counts=best_counts, total_watts=total_watts,
                      total_gb=total_gb, method="exact")
