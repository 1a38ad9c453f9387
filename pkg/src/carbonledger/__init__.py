"""Gross-carbon accounting for ML training workloads.

Estimate facility energy and gross CO2e from processor count, run duration,
average system power, PUE, and grid carbon intensity; decompose reductions
across the four levers (model, machine, mechanization, map); rank regions
and start hours by hourly grid data; audit published estimates; amortize
one-time search costs; and put fleet-level ML energy in context.
"""

from .analysis import (
    AuditFactor,
    AuditReport,
    BreakevenReport,
    ComparisonReport,
    Scenario,
    WaterfallReport,
    WaterfallStep,
    audit,
    breakeven,
    compare,
    evaluate_scenario,
    nas_to_training_ratio,
    waterfall,
    waterfall_from_scenarios,
)
from .catalog import (
    CatalogBundle,
    DatacenterProfile,
    HardwareProfile,
    HourlyPoint,
    RegionIntensity,
    WorkloadSpec,
    load_catalog,
    save_catalog,
    seed_paper_defaults,
)
from .errors import (
    CarbonLedgerError,
    DuplicateKeyError,
    MissingHourlyDataError,
    NotFoundError,
    ParseError,
    UnknownKeyError,
    ValidationError,
    WriteError,
)
from .estimator import (
    EmissionsEstimate,
    EnergyEstimate,
    estimate_emissions_flat,
    estimate_emissions_hourly,
    estimate_energy,
)
from .fleet import (
    FleetReport,
    FleetSnapshot,
    MobileBoundReport,
    fleet_report,
    mobile_bound,
)
from .placement import (
    PlacementQuery,
    PlacementResult,
    RegionChoice,
    best_start_hour,
    rank_regions,
)

__version__ = "0.1.0"

__all__ = [
    "AuditFactor",
    "AuditReport",
    "BreakevenReport",
    "CarbonLedgerError",
    "CatalogBundle",
    "ComparisonReport",
    "DatacenterProfile",
    "DuplicateKeyError",
    "EmissionsEstimate",
    "EnergyEstimate",
    "FleetReport",
    "FleetSnapshot",
    "HardwareProfile",
    "HourlyPoint",
    "MissingHourlyDataError",
    "MobileBoundReport",
    "NotFoundError",
    "ParseError",
    "PlacementQuery",
    "PlacementResult",
    "RegionChoice",
    "RegionIntensity",
    "Scenario",
    "UnknownKeyError",
    "ValidationError",
    "WaterfallReport",
    "WaterfallStep",
    "WorkloadSpec",
    "WriteError",
    "audit",
    "best_start_hour",
    "breakeven",
    "compare",
    "estimate_emissions_flat",
    "estimate_emissions_hourly",
    "estimate_energy",
    "evaluate_scenario",
    "fleet_report",
    "load_catalog",
    "mobile_bound",
    "nas_to_training_ratio",
    "rank_regions",
    "save_catalog",
    "seed_paper_defaults",
    "waterfall",
    "waterfall_from_scenarios",
]
