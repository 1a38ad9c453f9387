"""Carbon-aware placement: pick the region and integer start hour that
minimize integrated emissions (min_intensity) or maximize the run's average
carbon-free-energy share (max_cfe) over the regions' daily profiles.

The two objectives are deliberately separate: %CFE and tCO2e/MWh are
independent observations with no defined conversion, so min_intensity never
falls back to a CFE curve and vice versa.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import CatalogBundle, RegionIntensity, WorkloadSpec
from .errors import MissingHourlyDataError, ValidationError
from .estimator import estimate_energy, mean_curve_value

OBJECTIVES = ("min_intensity", "max_cfe")


@dataclass(frozen=True)
class PlacementQuery:
    workload: WorkloadSpec
    candidate_region_ids: tuple[str, ...]
    datacenter_id: str  # PUE source
    objective: str = "min_intensity"
    earliest_start: int = 0
    latest_start: int = 23  # window wraps midnight when latest < earliest

    def __post_init__(self) -> None:
        if not self.candidate_region_ids:
            raise ValidationError("candidate_region_ids must be nonempty")
        if self.objective not in OBJECTIVES:
            raise ValidationError(f"objective must be one of {OBJECTIVES}, got {self.objective!r}")
        for name, hour in (
            ("earliest_start", self.earliest_start),
            ("latest_start", self.latest_start),
        ):
            if not isinstance(hour, int) or isinstance(hour, bool) or not 0 <= hour <= 23:
                raise ValidationError(f"{name} must be an integer in 0..23, got {hour!r}")

    @classmethod
    def from_dict(cls, doc: dict) -> "PlacementQuery":
        try:
            workload = WorkloadSpec.from_dict(doc["workload"])
            candidates = doc["candidate_region_ids"]
            if not isinstance(candidates, (list, tuple)):
                raise ValidationError("candidate_region_ids must be a list")
            return cls(
                workload=workload,
                candidate_region_ids=tuple(str(r) for r in candidates),
                datacenter_id=str(doc["datacenter_id"]),
                objective=str(doc.get("objective", "min_intensity")),
                earliest_start=int(doc.get("earliest_start", 0)),
                latest_start=int(doc.get("latest_start", 23)),
            )
        except KeyError as exc:
            raise ValidationError(f"placement query is missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"placement query field has wrong type: {exc}") from None


@dataclass(frozen=True)
class RegionChoice:
    region_id: str
    best_start_hour: int
    objective_value: float
    gross_tco2e: float | None = None  # min_intensity only

    def to_dict(self) -> dict:
        out: dict = {
            "region_id": self.region_id,
            "best_start_hour": self.best_start_hour,
            "objective_value": self.objective_value,
        }
        if self.gross_tco2e is not None:
            out["gross_tco2e"] = self.gross_tco2e
        return out


@dataclass(frozen=True)
class PlacementResult:
    objective: str
    ranking: tuple[RegionChoice, ...]

    @property
    def chosen(self) -> RegionChoice:
        return self.ranking[0]

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "ranking": [choice.to_dict() for choice in self.ranking],
            "chosen": self.chosen.to_dict(),
        }


def window_hours(earliest: int, latest: int) -> list[int]:
    """Allowed integer start hours, ascending; wraps midnight when latest < earliest."""
    for name, hour in (("earliest", earliest), ("latest", latest)):
        if not isinstance(hour, int) or isinstance(hour, bool) or not 0 <= hour <= 23:
            raise ValidationError(f"{name} start hour must be an integer in 0..23, got {hour!r}")
    if earliest <= latest:
        hours = list(range(earliest, latest + 1))
    else:
        hours = list(range(0, latest + 1)) + list(range(earliest, 24))
    if not hours:
        raise ValidationError("start window is empty")
    return hours


def best_start_hour(
    region: RegionIntensity,
    duration_hours: float,
    objective: str = "min_intensity",
    start_window: tuple[int, int] = (0, 23),
) -> tuple[int, float]:
    """Exhaustively evaluate every allowed start hour and return the best.

    min_intensity minimizes the duration-weighted mean intensity (and hence
    the run's integrated emissions, which scale it by a constant energy);
    max_cfe maximizes the duration-weighted mean %CFE. Ties break toward the
    smaller hour because candidates are scanned in ascending order.
    """
    hours = window_hours(*start_window)
    if objective == "min_intensity":
        curve = region.hourly_intensities()
        better = lambda value, best: value < best
    elif objective == "max_cfe":
        curve = region.hourly_cfe()
        better = lambda value, best: value > best
    else:
        raise ValidationError(f"objective must be one of {OBJECTIVES}, got {objective!r}")

    best_hour: int | None = None
    best_value = 0.0
    for hour in hours:
        value = mean_curve_value(curve, hour, duration_hours)
        if best_hour is None or better(value, best_value):
            best_hour, best_value = hour, value
    assert best_hour is not None
    return best_hour, best_value


def rank_regions(query: PlacementQuery, catalog: CatalogBundle) -> PlacementResult:
    """Rank candidate regions by their best achievable objective.

    Per-region evaluations are independent and safe to parallelize; the
    ranking is fully deterministic regardless of evaluation order (objective,
    then region id, then start hour).
    """
    hardware = catalog.hardware_or_raise(query.workload.hardware_id)
    datacenter = catalog.datacenter_or_raise(query.datacenter_id)
    energy = estimate_energy(query.workload, hardware, datacenter)

    choices: list[RegionChoice] = []
    for region_id in query.candidate_region_ids:
        region = catalog.region_or_raise(region_id)
        try:
            hour, value = best_start_hour(
                region,
                query.workload.duration_hours,
                query.objective,
                (query.earliest_start, query.latest_start),
            )
        except MissingHourlyDataError:
            raise MissingHourlyDataError(
                f"region {region_id!r} lacks the hourly data required by {query.objective}"
            ) from None
        choices.append(
            RegionChoice(
                region_id=region_id,
                best_start_hour=hour,
                objective_value=value,
                gross_tco2e=energy.total_mwh * value
                if query.objective == "min_intensity"
                else None,
            )
        )

    descending = query.objective == "max_cfe"
    choices.sort(
        key=lambda c: (
            -c.objective_value if descending else c.objective_value,
            c.region_id,
            c.best_start_hour,
        )
    )
    return PlacementResult(objective=query.objective, ranking=tuple(choices))
