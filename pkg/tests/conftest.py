from __future__ import annotations

import pytest

from carbonledger import (
    CatalogBundle,
    DatacenterProfile,
    HardwareProfile,
    HourlyPoint,
    RegionIntensity,
    WorkloadSpec,
    seed_paper_defaults,
)


@pytest.fixture(scope="session")
def seed_bundle() -> CatalogBundle:
    return seed_paper_defaults()


def make_region(
    region_id: str,
    intensities: list[float] | None = None,
    cfe: list[float] | None = None,
    annual: float = 0.4,
) -> RegionIntensity:
    """Synthetic region with a 24-point profile (flat 50% CFE by default)."""
    if intensities is None and cfe is None:
        return RegionIntensity(region_id=region_id, name=region_id, annual_avg_intensity=annual)
    hourly = tuple(
        HourlyPoint(
            hour=h,
            cfe_percent=cfe[h] if cfe is not None else 50.0,
            intensity=intensities[h] if intensities is not None else None,
        )
        for h in range(24)
    )
    return RegionIntensity(
        region_id=region_id, name=region_id, annual_avg_intensity=annual, hourly=hourly
    )


def make_catalog(*regions: RegionIntensity, pue: float = 1.0) -> CatalogBundle:
    """Minimal bundle around the given regions: one 100 W GPU, one datacenter."""
    region_map = {r.region_id: r for r in regions}
    first = next(iter(region_map))
    return CatalogBundle(
        hardware={"gpu": HardwareProfile("gpu", "Test GPU", 2020, "gpu", 100.0)},
        datacenters={"dc": DatacenterProfile("dc", "Test DC", first, pue)},
        regions=region_map,
    )


def make_workload(duration_hours: float = 10.0, processor_count: int = 4) -> WorkloadSpec:
    return WorkloadSpec(
        label="test workload",
        processor_count=processor_count,
        duration_hours=duration_hours,
        hardware_id="gpu",
    )
