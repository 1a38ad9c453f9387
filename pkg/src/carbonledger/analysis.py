"""What-if analyses over the four levers (model, machine, mechanization, map):
waterfall factor decompositions, pairwise scenario comparison, audits of
published emission estimates, and search-cost break-even arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .catalog import CatalogBundle, WorkloadSpec
from .errors import ValidationError
from .estimator import (
    EmissionsEstimate,
    EnergyEstimate,
    estimate_emissions_flat,
    estimate_emissions_hourly,
    estimate_energy,
)

DIMENSIONS = ("model", "machine", "mechanization", "map")


@dataclass(frozen=True)
class Scenario:
    """One fully specified what-if choice: workload + facility + grid."""

    label: str
    workload: WorkloadSpec
    datacenter_id: str
    region_id: str
    emissions_method: str = "flat"  # "flat" | "hourly"
    start_hour: int | None = None

    def __post_init__(self) -> None:
        if self.emissions_method not in ("flat", "hourly"):
            raise ValidationError(
                f"emissions_method must be 'flat' or 'hourly', got {self.emissions_method!r}"
            )

    def to_dict(self) -> dict:
        out: dict = {
            "label": self.label,
            "workload": self.workload.to_dict(),
            "datacenter_id": self.datacenter_id,
            "region_id": self.region_id,
            "emissions_method": self.emissions_method,
        }
        if self.start_hour is not None:
            out["start_hour"] = self.start_hour
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> "Scenario":
        try:
            workload = WorkloadSpec.from_dict(doc["workload"])
        except KeyError:
            raise ValidationError("scenario is missing field 'workload'") from None
        except TypeError:
            raise ValidationError("scenario 'workload' must be an object") from None
        try:
            return cls(
                label=str(doc.get("label", "")),
                workload=workload,
                datacenter_id=str(doc["datacenter_id"]),
                region_id=str(doc["region_id"]),
                emissions_method=str(doc.get("emissions_method", "flat")),
                start_hour=doc.get("start_hour"),
            )
        except KeyError as exc:
            raise ValidationError(f"scenario is missing field {exc.args[0]!r}") from None


def evaluate_scenario(
    scenario: Scenario, catalog: CatalogBundle
) -> tuple[EnergyEstimate, EmissionsEstimate]:
    """Resolve a scenario against a catalog and run the energy/CO2e formulas."""
    hardware = catalog.hardware_or_raise(scenario.workload.hardware_id)
    datacenter = catalog.datacenter_or_raise(scenario.datacenter_id)
    region = catalog.region_or_raise(scenario.region_id)
    energy = estimate_energy(scenario.workload, hardware, datacenter)
    if scenario.emissions_method == "hourly":
        if scenario.start_hour is None:
            raise ValidationError("hourly emissions method requires start_hour")
        emissions = estimate_emissions_hourly(
            energy, region, scenario.start_hour, scenario.workload.duration_hours
        )
    else:
        emissions = estimate_emissions_flat(energy, region)
    return energy, emissions


# ---------------------------------------------------------------------------
# Waterfall decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WaterfallStep:
    """One lever's contribution, as a >= 1 division factor.

    ``energy_factor`` divides energy (and therefore emissions);
    ``emissions_only_factor`` divides emissions without touching energy —
    that is how a location (map) change works, since moving a job does not
    change facility energy, only the grid intensity it meets.
    """

    dimension: str
    description: str
    energy_factor: float = 1.0
    emissions_only_factor: float = 1.0

    def __post_init__(self) -> None:
        if self.dimension not in DIMENSIONS:
            raise ValidationError(
                f"dimension must be one of {DIMENSIONS}, got {self.dimension!r}"
            )
        for name, factor in (
            ("energy_factor", self.energy_factor),
            ("emissions_only_factor", self.emissions_only_factor),
        ):
            if not math.isfinite(factor) or factor < 1.0:
                raise ValidationError(f"{name} must be >= 1, got {factor!r}")
        if self.dimension == "map" and self.energy_factor != 1.0:
            raise ValidationError("map steps must have energy_factor = 1")

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "description": self.description,
            "energy_factor": self.energy_factor,
            "emissions_only_factor": self.emissions_only_factor,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "WaterfallStep":
        try:
            return cls(
                dimension=str(doc["dimension"]),
                description=str(doc.get("description", "")),
                energy_factor=float(doc.get("energy_factor", 1.0)),
                emissions_only_factor=float(doc.get("emissions_only_factor", 1.0)),
            )
        except KeyError as exc:
            raise ValidationError(f"waterfall step is missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"waterfall step field has wrong type: {exc}") from None


@dataclass(frozen=True)
class WaterfallEntry:
    step: WaterfallStep
    cumulative_energy_reduction: float
    cumulative_emissions_reduction: float

    def to_dict(self) -> dict:
        out = self.step.to_dict()
        out["cumulative_energy_reduction"] = self.cumulative_energy_reduction
        out["cumulative_emissions_reduction"] = self.cumulative_emissions_reduction
        return out


@dataclass(frozen=True)
class WaterfallReport:
    baseline_label: str
    steps: tuple[WaterfallEntry, ...]
    total_energy_reduction: float
    total_emissions_reduction: float

    def to_dict(self) -> dict:
        return {
            "baseline_label": self.baseline_label,
            "steps": [entry.to_dict() for entry in self.steps],
            "total_energy_reduction": self.total_energy_reduction,
            "total_emissions_reduction": self.total_emissions_reduction,
        }


def waterfall(baseline_label: str, steps: list[WaterfallStep]) -> WaterfallReport:
    """Fold ordered reduction factors into cumulative and total reductions.

    Totals are plain products, so they do not depend on step order; the
    per-step cumulative columns do.
    """
    if not steps:
        raise ValidationError("waterfall requires at least one step")
    entries: list[WaterfallEntry] = []
    cum_energy = 1.0
    cum_emissions = 1.0
    for step in steps:
        cum_energy *= step.energy_factor
        cum_emissions *= step.energy_factor * step.emissions_only_factor
        entries.append(
            WaterfallEntry(
                step=step,
                cumulative_energy_reduction=cum_energy,
                cumulative_emissions_reduction=cum_emissions,
            )
        )
    return WaterfallReport(
        baseline_label=baseline_label,
        steps=tuple(entries),
        total_energy_reduction=math.prod(s.energy_factor for s in steps),
        total_emissions_reduction=math.prod(
            s.energy_factor * s.emissions_only_factor for s in steps
        ),
    )


def waterfall_from_scenarios(
    baseline: Scenario, improved: Scenario, catalog: CatalogBundle
) -> list[WaterfallStep]:
    """Convenience adapter: derive per-dimension steps from a scenario pair.

    Splits the overall improvement into a machine step (per-processor power),
    a model step (the remaining energy ratio: fewer processor-hours), a
    mechanization step (PUE), and an emissions-only map step (intensity).
    """
    hw_base = catalog.hardware_or_raise(baseline.workload.hardware_id)
    hw_new = catalog.hardware_or_raise(improved.workload.hardware_id)
    dc_base = catalog.datacenter_or_raise(baseline.datacenter_id)
    dc_new = catalog.datacenter_or_raise(improved.datacenter_id)
    _, em_base = evaluate_scenario(baseline, catalog)
    _, em_new = evaluate_scenario(improved, catalog)

    machine = hw_base.avg_system_power_watts / hw_new.avg_system_power_watts
    hours_base = baseline.workload.processor_count * baseline.workload.duration_hours
    hours_new = improved.workload.processor_count * improved.workload.duration_hours
    model = hours_base / hours_new
    mechanization = dc_base.pue / dc_new.pue
    map_factor = em_base.effective_intensity / em_new.effective_intensity
    for name, factor in (
        ("model", model),
        ("machine", machine),
        ("mechanization", mechanization),
        ("map", map_factor),
    ):
        if factor < 1.0:
            raise ValidationError(
                f"scenario pair implies a {name} factor below 1 ({factor:.4g}); "
                "the improved scenario must not regress on any dimension"
            )
    return [
        WaterfallStep("model", f"{baseline.workload.label} -> {improved.workload.label}", model),
        WaterfallStep("machine", f"{hw_base.name} -> {hw_new.name}", machine),
        WaterfallStep("mechanization", f"PUE {dc_base.pue} -> {dc_new.pue}", mechanization),
        WaterfallStep(
            "map",
            f"{baseline.region_id} -> {improved.region_id}",
            emissions_only_factor=map_factor,
        ),
    ]


# ---------------------------------------------------------------------------
# Pairwise comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComparisonReport:
    """Baseline/candidate ratios; > 1 means the candidate is better."""

    baseline_label: str
    candidate_label: str
    energy_ratio: float
    compute_ratio: float
    intensity_ratio: float
    emissions_ratio: float

    def to_dict(self) -> dict:
        return {
            "baseline_label": self.baseline_label,
            "candidate_label": self.candidate_label,
            "energy_ratio": self.energy_ratio,
            "compute_ratio": self.compute_ratio,
            "intensity_ratio": self.intensity_ratio,
            "emissions_ratio": self.emissions_ratio,
        }


def compare(baseline: Scenario, candidate: Scenario, catalog: CatalogBundle) -> ComparisonReport:
    """Evaluate both scenarios and report baseline/candidate ratios."""
    energy_base, em_base = evaluate_scenario(baseline, catalog)
    energy_cand, em_cand = evaluate_scenario(candidate, catalog)
    return ComparisonReport(
        baseline_label=baseline.label,
        candidate_label=candidate.label,
        energy_ratio=energy_base.total_mwh / energy_cand.total_mwh,
        compute_ratio=baseline.workload.accelerator_years / candidate.workload.accelerator_years,
        intensity_ratio=em_base.effective_intensity / em_cand.effective_intensity,
        emissions_ratio=em_base.gross_tco2e / em_cand.gross_tco2e,
    )


# ---------------------------------------------------------------------------
# Published-estimate audits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditFactor:
    name: str
    factor: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.factor) or self.factor < 1.0:
            raise ValidationError(f"audit factor must be >= 1, got {self.factor!r}")

    def to_dict(self) -> dict:
        return {"name": self.name, "factor": self.factor}


@dataclass(frozen=True)
class AuditReport:
    """A published tCO2e figure decomposed into overestimation factors."""

    published_tco2e: float
    factors: tuple[AuditFactor, ...]
    combined_factor: float
    recomputed_tco2e: float
    actual_tco2e: float | None = None
    residual_ratio: float | None = None

    def to_dict(self) -> dict:
        out: dict = {
            "published_tco2e": self.published_tco2e,
            "factors": [f.to_dict() for f in self.factors],
            "combined_factor": self.combined_factor,
            "recomputed_tco2e": self.recomputed_tco2e,
        }
        if self.actual_tco2e is not None:
            out["actual_tco2e"] = self.actual_tco2e
            out["residual_ratio"] = self.residual_ratio
        return out


def audit(
    published_tco2e: float,
    factors: list[AuditFactor],
    actual_tco2e: float | None = None,
) -> AuditReport:
    """Divide a published estimate by its identified overestimation factors.

    ``residual_ratio`` (recomputed / actual) captures whatever slack the
    factor list leaves against a known actual figure.
    """
    if not math.isfinite(published_tco2e) or published_tco2e <= 0:
        raise ValidationError(f"published_tco2e must be > 0, got {published_tco2e!r}")
    if actual_tco2e is not None and (not math.isfinite(actual_tco2e) or actual_tco2e <= 0):
        raise ValidationError(f"actual_tco2e must be > 0, got {actual_tco2e!r}")
    combined = math.prod(f.factor for f in factors)
    recomputed = published_tco2e / combined
    return AuditReport(
        published_tco2e=published_tco2e,
        factors=tuple(factors),
        combined_factor=combined,
        recomputed_tco2e=recomputed,
        actual_tco2e=actual_tco2e,
        residual_ratio=None if actual_tco2e is None else recomputed / actual_tco2e,
    )


def nas_to_training_ratio(search_tco2e: float, one_training_tco2e: float) -> float:
    """How many times a one-time search outweighs a single training run."""
    if not math.isfinite(search_tco2e) or search_tco2e <= 0:
        raise ValidationError(f"search_tco2e must be > 0, got {search_tco2e!r}")
    if not math.isfinite(one_training_tco2e) or one_training_tco2e <= 0:
        raise ValidationError(f"one_training_tco2e must be > 0, got {one_training_tco2e!r}")
    return search_tco2e / one_training_tco2e


# ---------------------------------------------------------------------------
# Break-even for one-time search costs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BreakevenReport:
    """Amortization of a one-time cost against per-training savings.

    Unit-agnostic: cost and saving just have to share a unit (MWh or tCO2e).
    """

    search_cost: float
    per_training_saving: float
    breakeven_count: int
    unit: str = "MWh"

    def net_at(self, trainings: int) -> float:
        """Signed saving after ``trainings`` downstream runs."""
        return trainings * self.per_training_saving - self.search_cost

    def to_dict(self) -> dict:
        return {
            "search_cost": self.search_cost,
            "per_training_saving": self.per_training_saving,
            "unit": self.unit,
            "breakeven_count": self.breakeven_count,
            "net_at_breakeven": self.net_at(self.breakeven_count),
        }


def breakeven(search_cost: float, per_training_saving: float, unit: str = "MWh") -> BreakevenReport:
    """Smallest n with n x saving >= cost; exact division breaks low."""
    if not math.isfinite(search_cost) or search_cost <= 0:
        raise ValidationError(f"search_cost must be > 0, got {search_cost!r}")
    if not math.isfinite(per_training_saving) or per_training_saving <= 0:
        raise ValidationError(f"per_training_saving must be > 0, got {per_training_saving!r}")
    count = max(1, math.ceil(search_cost / per_training_saving))
    # float division can land one off the true threshold; settle on the
    # smallest n whose product actually covers the cost
    while count > 1 and (count - 1) * per_training_saving >= search_cost:
        count -= 1
    while count * per_training_saving < search_cost:
        count += 1
    return BreakevenReport(
        search_cost=search_cost,
        per_training_saving=per_training_saving,
        breakeven_count=count,
        unit=unit,
    )
