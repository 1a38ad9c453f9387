"""Reference data for the accounting engine: hardware power, datacenter PUE,
and regional carbon intensity / carbon-free-energy curves.

Catalogs live on disk as a directory of CSV files:

    hardware.csv        id,name,year,kind,avg_system_power_watts
    datacenters.csv     id,name,region_id,pue
    regions.csv         region_id,name,annual_avg_intensity_tco2e_per_mwh
    regions_hourly.csv  region_id,hour,cfe_percent,intensity_tco2e_per_mwh   (optional)

Headers are strict: unknown or missing columns are rejected so that unit
mistakes surface at load time rather than in a report. Hourly curves are
daily profiles (exactly 24 rows per region, local hour of day 0-23); jobs
longer than 24 h tile the profile. ``cfe_percent`` and ``intensity`` are
independent observations of grid cleanliness and are never converted into
one another.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field, replace

from .errors import (
    DuplicateKeyError,
    MissingHourlyDataError,
    NotFoundError,
    ParseError,
    UnknownKeyError,
    ValidationError,
    WriteError,
)

HOURS_PER_YEAR = 8760.0

HARDWARE_KINDS = frozenset({"gpu", "tpu", "cpu"})

_HARDWARE_HEADER = ["id", "name", "year", "kind", "avg_system_power_watts"]
_DATACENTER_HEADER = ["id", "name", "region_id", "pue"]
_REGION_HEADER = ["region_id", "name", "annual_avg_intensity_tco2e_per_mwh"]
_HOURLY_HEADER = ["region_id", "hour", "cfe_percent", "intensity_tco2e_per_mwh"]


def _finite(value: float, what: str) -> float:
    if not math.isfinite(value):
        raise ValidationError(f"{what} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class HardwareProfile:
    """A processor model with its average whole-system power draw.

    ``avg_system_power_watts`` is Watts per processor averaged over a
    training run and includes the processor's share of local memory,
    network links, and host overhead. ``notes`` is annotation only: it is
    not persisted to CSV and does not take part in equality.
    """

    id: str
    name: str
    year: int
    kind: str
    avg_system_power_watts: float
    notes: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("hardware id must be nonempty")
        if self.kind not in HARDWARE_KINDS:
            raise ValidationError(
                f"hardware kind must be one of {sorted(HARDWARE_KINDS)}, got {self.kind!r}"
            )
        _finite(self.avg_system_power_watts, "avg_system_power_watts")
        if self.avg_system_power_watts <= 0:
            raise ValidationError(
                f"avg_system_power_watts must be > 0, got {self.avg_system_power_watts}"
            )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "year": self.year,
            "kind": self.kind,
            "avg_system_power_watts": self.avg_system_power_watts,
            "notes": self.notes,
        }


@dataclass(frozen=True)
class DatacenterProfile:
    """A facility: its energy overhead ratio (PUE) and home region."""

    id: str
    name: str
    region_id: str
    pue: float

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("datacenter id must be nonempty")
        _finite(self.pue, "pue")
        if self.pue < 1.0:
            raise ValidationError(f"pue must be >= 1.0, got {self.pue}")

    def to_dict(self) -> dict:
        return {"id": self.id, "name": self.name, "region_id": self.region_id, "pue": self.pue}


@dataclass(frozen=True)
class HourlyPoint:
    """One local hour of a region's daily grid profile."""

    hour: int
    cfe_percent: float
    intensity: float | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.hour, int) or not 0 <= self.hour <= 23:
            raise ValidationError(f"hour must be an integer in 0..23, got {self.hour!r}")
        _finite(self.cfe_percent, "cfe_percent")
        if not 0.0 <= self.cfe_percent <= 100.0:
            raise ValidationError(f"cfe_percent must be within [0, 100], got {self.cfe_percent}")
        if self.intensity is not None:
            _finite(self.intensity, "intensity")
            if self.intensity < 0:
                raise ValidationError(f"hourly intensity must be >= 0, got {self.intensity}")


@dataclass(frozen=True)
class RegionIntensity:
    """Grid cleanliness for one region: an annual-average carbon intensity
    plus an optional 24-point daily profile of %CFE and hourly intensity."""

    region_id: str
    name: str
    annual_avg_intensity: float
    hourly: tuple[HourlyPoint, ...] | None = None

    def __post_init__(self) -> None:
        if not self.region_id:
            raise ValidationError("region_id must be nonempty")
        _finite(self.annual_avg_intensity, "annual_avg_intensity")
        if self.annual_avg_intensity < 0:
            raise ValidationError(
                f"annual_avg_intensity must be >= 0, got {self.annual_avg_intensity}"
            )
        if self.hourly is not None:
            if len(self.hourly) != 24:
                raise ValidationError(
                    f"hourly profile for {self.region_id!r} must have exactly 24 entries, "
                    f"got {len(self.hourly)}"
                )
            hours = sorted(p.hour for p in self.hourly)
            if hours != list(range(24)):
                raise ValidationError(
                    f"hourly profile for {self.region_id!r} must cover hours 0..23 exactly once"
                )
            # canonical order: by hour
            object.__setattr__(
                self, "hourly", tuple(sorted(self.hourly, key=lambda p: p.hour))
            )

    @property
    def has_hourly_intensity(self) -> bool:
        return self.hourly is not None and all(p.intensity is not None for p in self.hourly)

    def hourly_intensities(self) -> list[float]:
        """The 24 hourly intensities, hour 0 first."""
        if not self.has_hourly_intensity:
            raise MissingHourlyDataError(
                f"region {self.region_id!r} has no complete hourly intensity data"
            )
        assert self.hourly is not None
        return [p.intensity for p in self.hourly]  # type: ignore[misc]

    def hourly_cfe(self) -> list[float]:
        """The 24 hourly %CFE values, hour 0 first."""
        if self.hourly is None:
            raise MissingHourlyDataError(f"region {self.region_id!r} has no hourly data")
        return [p.cfe_percent for p in self.hourly]

    def to_dict(self) -> dict:
        out: dict = {
            "region_id": self.region_id,
            "name": self.name,
            "annual_avg_intensity": self.annual_avg_intensity,
        }
        if self.hourly is not None:
            out["hourly"] = [
                {"hour": p.hour, "cfe_percent": p.cfe_percent, "intensity": p.intensity}
                for p in self.hourly
            ]
        return out


@dataclass(frozen=True)
class WorkloadSpec:
    """A training run: how many processors for how long on which hardware."""

    label: str
    processor_count: int
    duration_hours: float
    hardware_id: str

    def __post_init__(self) -> None:
        if not isinstance(self.processor_count, int) or self.processor_count < 1:
            raise ValidationError(
                f"processor_count must be an integer >= 1, got {self.processor_count!r}"
            )
        _finite(self.duration_hours, "duration_hours")
        if self.duration_hours <= 0:
            raise ValidationError(f"duration_hours must be > 0, got {self.duration_hours}")

    @property
    def accelerator_years(self) -> float:
        """Processor-hours expressed in years of one continuously-busy processor."""
        return self.processor_count * self.duration_hours / HOURS_PER_YEAR

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "processor_count": self.processor_count,
            "duration_hours": self.duration_hours,
            "hardware_id": self.hardware_id,
            "accelerator_years": self.accelerator_years,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "WorkloadSpec":
        try:
            return cls(
                label=str(doc.get("label", "")),
                processor_count=int(doc["processor_count"]),
                duration_hours=float(doc["duration_hours"]),
                hardware_id=str(doc["hardware_id"]),
            )
        except KeyError as exc:
            raise ValidationError(f"workload is missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"workload field has wrong type: {exc}") from None


@dataclass
class CatalogBundle:
    """An immutable-by-convention snapshot of all reference data.

    Safe to share across threads once constructed; nothing in this package
    mutates a bundle after ``__post_init__`` runs.
    """

    hardware: dict[str, HardwareProfile] = field(default_factory=dict)
    datacenters: dict[str, DatacenterProfile] = field(default_factory=dict)
    regions: dict[str, RegionIntensity] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for key, hw in self.hardware.items():
            if key != hw.id:
                raise ValidationError(f"hardware key {key!r} does not match id {hw.id!r}")
        for key, dc in self.datacenters.items():
            if key != dc.id:
                raise ValidationError(f"datacenter key {key!r} does not match id {dc.id!r}")
        for key, region in self.regions.items():
            if key != region.region_id:
                raise ValidationError(f"region key {key!r} does not match id {region.region_id!r}")
        for dc in self.datacenters.values():
            if dc.region_id not in self.regions:
                raise UnknownKeyError(dc.region_id, "region")

    def hardware_or_raise(self, hardware_id: str) -> HardwareProfile:
        try:
            return self.hardware[hardware_id]
        except KeyError:
            raise UnknownKeyError(hardware_id, "hardware") from None

    def datacenter_or_raise(self, datacenter_id: str) -> DatacenterProfile:
        try:
            return self.datacenters[datacenter_id]
        except KeyError:
            raise UnknownKeyError(datacenter_id, "datacenter") from None

    def region_or_raise(self, region_id: str) -> RegionIntensity:
        try:
            return self.regions[region_id]
        except KeyError:
            raise UnknownKeyError(region_id, "region") from None


# ---------------------------------------------------------------------------
# CSV loading
# ---------------------------------------------------------------------------


def _read_rows(path: str, expected_header: list[str]) -> list[tuple[int, list[str]]]:
    """Read a strict-schema CSV, returning (line_number, cells) per data row."""
    filename = os.path.basename(path)
    try:
        handle = open(path, newline="", encoding="utf-8")
    except FileNotFoundError:
        raise NotFoundError(f"missing catalog file {filename!r} in {os.path.dirname(path)!r}")
    with handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("file is empty (expected a header row)", file=filename, line=1)
        if header != expected_header:
            raise ParseError(
                f"header must be exactly {','.join(expected_header)}, got {','.join(header)}",
                file=filename,
                line=1,
            )
        rows: list[tuple[int, list[str]]] = []
        for lineno, cells in enumerate(reader, start=2):
            if not cells or all(cell.strip() == "" for cell in cells):
                continue
            if len(cells) != len(expected_header):
                raise ParseError(
                    f"expected {len(expected_header)} columns, got {len(cells)}",
                    file=filename,
                    line=lineno,
                )
            rows.append((lineno, cells))
        return rows


def _parse_int(text: str, what: str, filename: str, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}", file=filename, line=lineno)


def _parse_float(text: str, what: str, filename: str, lineno: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"{what} must be a number, got {text!r}", file=filename, line=lineno)
    if not math.isfinite(value):
        raise ParseError(f"{what} must be finite, got {text!r}", file=filename, line=lineno)
    return value


def load_catalog(dir_path: str) -> CatalogBundle:
    """Load and validate a catalog directory.

    Raises NotFoundError for a missing required file, ParseError (with file
    and line) for any malformed or invariant-violating row, DuplicateKeyError
    for repeated ids, and UnknownKeyError for dangling references. On any
    error, no partially constructed bundle escapes.
    """
    if not os.path.isdir(dir_path):
        raise NotFoundError(f"catalog directory {dir_path!r} does not exist")

    hardware: dict[str, HardwareProfile] = {}
    fname = "hardware.csv"
    for lineno, cells in _read_rows(os.path.join(dir_path, fname), _HARDWARE_HEADER):
        try:
            profile = HardwareProfile(
                id=cells[0],
                name=cells[1],
                year=_parse_int(cells[2], "year", fname, lineno),
                kind=cells[3],
                avg_system_power_watts=_parse_float(
                    cells[4], "avg_system_power_watts", fname, lineno
                ),
            )
        except ValidationError as exc:
            raise ParseError(str(exc), file=fname, line=lineno) from None
        if profile.id in hardware:
            raise DuplicateKeyError(profile.id, file=fname, line=lineno)
        hardware[profile.id] = profile

    regions: dict[str, RegionIntensity] = {}
    fname = "regions.csv"
    for lineno, cells in _read_rows(os.path.join(dir_path, fname), _REGION_HEADER):
        try:
            region = RegionIntensity(
                region_id=cells[0],
                name=cells[1],
                annual_avg_intensity=_parse_float(
                    cells[2], "annual_avg_intensity", fname, lineno
                ),
            )
        except ValidationError as exc:
            raise ParseError(str(exc), file=fname, line=lineno) from None
        if region.region_id in regions:
            raise DuplicateKeyError(region.region_id, file=fname, line=lineno)
        regions[region.region_id] = region

    datacenters: dict[str, DatacenterProfile] = {}
    fname = "datacenters.csv"
    for lineno, cells in _read_rows(os.path.join(dir_path, fname), _DATACENTER_HEADER):
        try:
            dc = DatacenterProfile(
                id=cells[0],
                name=cells[1],
                region_id=cells[2],
                pue=_parse_float(cells[3], "pue", fname, lineno),
            )
        except ValidationError as exc:
            raise ParseError(str(exc), file=fname, line=lineno) from None
        if dc.id in datacenters:
            raise DuplicateKeyError(dc.id, file=fname, line=lineno)
        datacenters[dc.id] = dc

    # optional hourly profiles
    fname = "regions_hourly.csv"
    hourly_path = os.path.join(dir_path, fname)
    if os.path.exists(hourly_path):
        by_region: dict[str, list[HourlyPoint]] = {}
        seen_hours: dict[str, set[int]] = {}
        for lineno, cells in _read_rows(hourly_path, _HOURLY_HEADER):
            region_id = cells[0]
            if region_id not in regions:
                raise UnknownKeyError(region_id, "region")
            hour = _parse_int(cells[1], "hour", fname, lineno)
            cfe = _parse_float(cells[2], "cfe_percent", fname, lineno)
            intensity = (
                None
                if cells[3].strip() == ""
                else _parse_float(cells[3], "intensity", fname, lineno)
            )
            try:
                point = HourlyPoint(hour=hour, cfe_percent=cfe, intensity=intensity)
            except ValidationError as exc:
                raise ParseError(str(exc), file=fname, line=lineno) from None
            hours = seen_hours.setdefault(region_id, set())
            if point.hour in hours:
                raise ParseError(
                    f"region {region_id!r} repeats hour {point.hour}", file=fname, line=lineno
                )
            hours.add(point.hour)
            by_region.setdefault(region_id, []).append(point)
        for region_id, points in by_region.items():
            if len(points) != 24:
                raise ParseError(
                    f"region {region_id!r} has {len(points)} hourly rows (must be exactly 24)",
                    file=fname,
                )
            regions[region_id] = replace(regions[region_id], hourly=tuple(points))

    return CatalogBundle(hardware=hardware, datacenters=datacenters, regions=regions)


# ---------------------------------------------------------------------------
# CSV saving
# ---------------------------------------------------------------------------


def _fmt(value: float) -> str:
    """Format a float so that reading it back is exact (repr round-trips)."""
    return repr(value)


def save_catalog(bundle: CatalogBundle, dir_path: str) -> None:
    """Write a bundle as catalog CSVs; ``load_catalog`` round-trips exactly."""
    try:
        os.makedirs(dir_path, exist_ok=True)
        with open(os.path.join(dir_path, "hardware.csv"), "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(_HARDWARE_HEADER)
            for hw in sorted(bundle.hardware.values(), key=lambda h: h.id):
                writer.writerow(
                    [hw.id, hw.name, hw.year, hw.kind, _fmt(hw.avg_system_power_watts)]
                )
        with open(os.path.join(dir_path, "regions.csv"), "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(_REGION_HEADER)
            for region in sorted(bundle.regions.values(), key=lambda r: r.region_id):
                writer.writerow([region.region_id, region.name, _fmt(region.annual_avg_intensity)])
        with open(
            os.path.join(dir_path, "datacenters.csv"), "w", newline="", encoding="utf-8"
        ) as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(_DATACENTER_HEADER)
            for dc in sorted(bundle.datacenters.values(), key=lambda d: d.id):
                writer.writerow([dc.id, dc.name, dc.region_id, _fmt(dc.pue)])
        with open(
            os.path.join(dir_path, "regions_hourly.csv"), "w", newline="", encoding="utf-8"
        ) as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(_HOURLY_HEADER)
            for region in sorted(bundle.regions.values(), key=lambda r: r.region_id):
                if region.hourly is None:
                    continue
                for point in region.hourly:
                    writer.writerow(
                        [
                            region.region_id,
                            point.hour,
                            _fmt(point.cfe_percent),
                            "" if point.intensity is None else _fmt(point.intensity),
                        ]
                    )
    except OSError as exc:
        raise WriteError(f"cannot write catalog to {dir_path!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# Seeded reference data
# ---------------------------------------------------------------------------

# Back-solved from the published footprint of one medium Evolved Transformer
# training run: 2.4 kg CO2e over 120 TPUv2-hours at facility PUE 1.11 and
# grid intensity 0.088 tCO2e/MWh, so
#   watts = 0.0024 / 0.088 / 1.11 / 120 * 1e6 = 204.75
TPU_V2_WATTS = 0.0024 / 0.088 / 1.11 / 120 * 1e6

# GPT-3's published training footprint (405 V100-years, ~1287 MWh at PUE 1.10)
# implies an average system power of 330 W per V100.
V100_WATTS = 330.0

# GLaM's run is reported as 2.8x fewer accelerator-years AND 2.8x less energy
# than GPT-3 at comparable cloud PUE, which implies the same average system
# power per processor as the V100 above.
TPU_V4_WATTS = 330.0

# Synthetic stand-in for Chile's day-shaped grid profile: high carbon-free
# share from 6AM to 8PM, carbon-heavy at night. Published data covers the
# shape, not the hourly numbers, so these values are illustrative.
CHILE_DAY_HOURS = range(6, 20)
CHILE_DAY_CFE, CHILE_NIGHT_CFE = 90.0, 20.0
CHILE_DAY_INTENSITY, CHILE_NIGHT_INTENSITY = 0.05, 0.50


def _flat_curve(cfe: float, intensity: float | None) -> tuple[HourlyPoint, ...]:
    return tuple(HourlyPoint(hour=h, cfe_percent=cfe, intensity=intensity) for h in range(24))


def seed_paper_defaults() -> CatalogBundle:
    """The built-in catalog of published reference values.

    Regions without a published annual intensity (Iowa, Nevada) carry the
    2020 US-average 0.429 tCO2e/MWh as a documented placeholder; their %CFE
    values are the published ones. Flat 24-hour curves stand in for
    unpublished hourly series.
    """
    hardware = [
        HardwareProfile(
            id="p100",
            name="NVIDIA P100",
            year=2016,
            kind="gpu",
            avg_system_power_watts=300.0,
            notes="graphics-era GPU, not ML-optimized; 300 W average system power",
        ),
        HardwareProfile(
            id="v100",
            name="NVIDIA V100",
            year=2017,
            kind="gpu",
            avg_system_power_watts=V100_WATTS,
            notes="ML-optimized GPU; 330 W reproduces GPT-3's ~1287 MWh at PUE 1.10",
        ),
        HardwareProfile(
            id="tpu2",
            name="Google TPU v2",
            year=2017,
            kind="tpu",
            avg_system_power_watts=TPU_V2_WATTS,
            notes="back-solved from the 2.4 kg / 120 TPUv2-hour training footprint",
        ),
        HardwareProfile(
            id="tpu4",
            name="Google TPU v4",
            year=2021,
            kind="tpu",
            avg_system_power_watts=TPU_V4_WATTS,
            notes="set so a GLaM-scale run uses 2.8x less energy in 2.8x fewer accelerator-years",
        ),
    ]
    regions = [
        RegionIntensity(
            region_id="avg2020",
            name="US average grid (2020)",
            annual_avg_intensity=0.429,
        ),
        RegionIntensity(
            region_id="avg2017",
            name="US average grid (2017)",
            annual_avg_intensity=0.488,
        ),
        RegionIntensity(
            region_id="oklahoma",
            name="Oklahoma",
            annual_avg_intensity=0.088,
            hourly=_flat_curve(96.0, 0.088),
        ),
        RegionIntensity(
            region_id="iowa",
            name="Iowa",
            annual_avg_intensity=0.429,  # placeholder: no published annual figure
            hourly=_flat_curve(93.0, None),
        ),
        RegionIntensity(
            region_id="nevada",
            name="Nevada",
            annual_avg_intensity=0.429,  # placeholder: no published annual figure
            hourly=_flat_curve(19.0, None),
        ),
        RegionIntensity(
            region_id="chile",
            name="Chile (synthetic day-shaped curve)",
            annual_avg_intensity=(
                len(CHILE_DAY_HOURS) * CHILE_DAY_INTENSITY
                + (24 - len(CHILE_DAY_HOURS)) * CHILE_NIGHT_INTENSITY
            )
            / 24.0,
            hourly=tuple(
                HourlyPoint(
                    hour=h,
                    cfe_percent=CHILE_DAY_CFE if h in CHILE_DAY_HOURS else CHILE_NIGHT_CFE,
                    intensity=CHILE_DAY_INTENSITY
                    if h in CHILE_DAY_HOURS
                    else CHILE_NIGHT_INTENSITY,
                )
                for h in range(24)
            ),
        ),
    ]
    datacenters = [
        DatacenterProfile(
            id="avg2020",
            name="Industry-average datacenter (2020)",
            region_id="avg2020",
            pue=1.58,
        ),
        DatacenterProfile(
            id="avg2017",
            name="Industry-average datacenter (2017)",
            region_id="avg2017",
            pue=1.60,
        ),
        DatacenterProfile(
            id="cloud",
            name="Efficient cloud datacenter",
            region_id="avg2020",
            pue=1.10,
        ),
        DatacenterProfile(
            id="gcp-oklahoma",
            name="Google Cloud, Oklahoma",
            region_id="oklahoma",
            pue=1.11,
        ),
    ]
    return CatalogBundle(
        hardware={hw.id: hw for hw in hardware},
        datacenters={dc.id: dc for dc in datacenters},
        regions={r.region_id: r for r in regions},
    )
