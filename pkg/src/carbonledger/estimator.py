"""Facility energy and gross CO2e for a training run.

Energy:     MWh = hours x processors x average system Watts x 1e-6, then
            multiplied by the facility PUE for total (IT + overhead) energy.
Emissions:  tCO2e = MWh x carbon intensity (tCO2e per MWh), either against a
            region's annual average (flat) or integrated over its 24-hour
            daily profile (hourly).

Power draw is modeled as constant over the run; Watts enter exactly once, at
the hardware boundary. The hourly mode assumes integer start hours and tiles
the daily profile for runs longer than 24 h, weighting a fractional final
hour pro rata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .catalog import DatacenterProfile, HardwareProfile, RegionIntensity, WorkloadSpec
from .errors import ValidationError

MWH_PER_WH = 1e-6


@dataclass(frozen=True)
class EnergyEstimate:
    """Energy for one run: IT-equipment MWh and total facility MWh."""

    it_mwh: float
    total_mwh: float
    pue_used: float

    def to_dict(self) -> dict:
        return {"it_mwh": self.it_mwh, "total_mwh": self.total_mwh, "pue_used": self.pue_used}


@dataclass(frozen=True)
class EmissionsEstimate:
    """Gross CO2e for one run, before any renewable matching or offsets."""

    gross_tco2e: float
    total_mwh: float
    effective_intensity: float
    method: str  # "flat" | "hourly"
    start_hour: int | None = None

    def to_dict(self) -> dict:
        out: dict = {
            "gross_tco2e": self.gross_tco2e,
            "total_mwh": self.total_mwh,
            "effective_intensity": self.effective_intensity,
            "method": self.method,
        }
        if self.start_hour is not None:
            out["start_hour"] = self.start_hour
        return out


def estimate_energy(
    workload: WorkloadSpec,
    hardware: HardwareProfile,
    datacenter: DatacenterProfile,
) -> EnergyEstimate:
    """Energy of a run: linear in duration, processor count, and power."""
    it_mwh = (
        workload.duration_hours
        * workload.processor_count
        * hardware.avg_system_power_watts
        * MWH_PER_WH
    )
    return EnergyEstimate(it_mwh=it_mwh, total_mwh=it_mwh * datacenter.pue, pue_used=datacenter.pue)


def estimate_emissions_flat(energy: EnergyEstimate, region: RegionIntensity) -> EmissionsEstimate:
    """Gross CO2e against the region's annual-average intensity."""
    return EmissionsEstimate(
        gross_tco2e=energy.total_mwh * region.annual_avg_intensity,
        total_mwh=energy.total_mwh,
        effective_intensity=region.annual_avg_intensity,
        method="flat",
    )


def _check_start_hour(start_hour: int) -> int:
    if not isinstance(start_hour, int) or isinstance(start_hour, bool) or not 0 <= start_hour <= 23:
        raise ValidationError(f"start_hour must be an integer in 0..23, got {start_hour!r}")
    return start_hour


def weighted_curve_sum(values: Sequence[float], start_hour: int, duration_hours: float) -> float:
    """Sum of a 24-point daily curve over ``duration_hours`` wall-clock hours
    starting at ``start_hour``, the final fractional hour weighted pro rata.

    Full 24 h cycles share one precomputed day-sum, so a 48 h run is exactly
    twice a 24 h run and arbitrarily long runs stay O(24).
    """
    if len(values) != 24:
        raise ValidationError(f"daily curve must have 24 values, got {len(values)}")
    _check_start_hour(start_hour)
    if not math.isfinite(duration_hours) or duration_hours <= 0:
        raise ValidationError(f"duration_hours must be > 0, got {duration_hours!r}")

    full_cycles, remainder = divmod(duration_hours, 24.0)
    total = full_cycles * sum(values) if full_cycles else 0.0
    whole = int(remainder)
    for step in range(whole):
        total += values[(start_hour + step) % 24]
    fraction = remainder - whole
    if fraction > 0.0:
        total += fraction * values[(start_hour + whole) % 24]
    return total


def mean_curve_value(values: Sequence[float], start_hour: int, duration_hours: float) -> float:
    """Duration-weighted mean of a daily curve over the elapsed window."""
    return weighted_curve_sum(values, start_hour, duration_hours) / duration_hours


def estimate_emissions_hourly(
    energy: EnergyEstimate,
    region: RegionIntensity,
    start_hour: int,
    duration_hours: float,
) -> EmissionsEstimate:
    """Gross CO2e integrated over the region's hourly intensity curve.

    Power is uniform over the run, so each elapsed wall-clock hour carries
    total_mwh / duration_hours of energy at that hour's intensity. Requires
    a complete 24-hour intensity profile; raises MissingHourlyDataError
    otherwise.
    """
    _check_start_hour(start_hour)
    intensities = region.hourly_intensities()
    effective = mean_curve_value(intensities, start_hour, duration_hours)
    return EmissionsEstimate(
        gross_tco2e=energy.total_mwh * effective,
        total_mwh=energy.total_mwh,
        effective_intensity=effective,
        method="hourly",
        start_hour=start_hour,
    )
