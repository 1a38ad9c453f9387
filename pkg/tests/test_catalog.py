from __future__ import annotations

import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carbonledger import (
    CatalogBundle,
    DatacenterProfile,
    DuplicateKeyError,
    HardwareProfile,
    HourlyPoint,
    NotFoundError,
    ParseError,
    RegionIntensity,
    UnknownKeyError,
    ValidationError,
    WorkloadSpec,
    WriteError,
    load_catalog,
    save_catalog,
    seed_paper_defaults,
)

HW_HEADER = "id,name,year,kind,avg_system_power_watts\n"
DC_HEADER = "id,name,region_id,pue\n"
REGION_HEADER = "region_id,name,annual_avg_intensity_tco2e_per_mwh\n"
HOURLY_HEADER = "region_id,hour,cfe_percent,intensity_tco2e_per_mwh\n"


def write_catalog_dir(
    tmp_path,
    hardware=HW_HEADER,
    datacenters=DC_HEADER,
    regions=REGION_HEADER,
    hourly=None,
):
    (tmp_path / "hardware.csv").write_text(hardware)
    (tmp_path / "datacenters.csv").write_text(datacenters)
    (tmp_path / "regions.csv").write_text(regions)
    if hourly is not None:
        (tmp_path / "regions_hourly.csv").write_text(hourly)
    return str(tmp_path)


class TestLoadCatalog:
    def test_row_maps_to_fields(self, tmp_path):
        path = write_catalog_dir(
            tmp_path,
            hardware=HW_HEADER + "p100,NVIDIA P100,2016,gpu,300\n",
            regions=REGION_HEADER + "r1,Region One,0.4\n",
            datacenters=DC_HEADER + "d1,DC One,r1,1.25\n",
        )
        bundle = load_catalog(path)
        hw = bundle.hardware["p100"]
        assert hw.name == "NVIDIA P100"
        assert hw.year == 2016
        assert hw.kind == "gpu"
        assert hw.avg_system_power_watts == 300.0
        assert bundle.datacenters["d1"].pue == 1.25
        assert bundle.regions["r1"].annual_avg_intensity == 0.4

    def test_crlf_accepted(self, tmp_path):
        path = write_catalog_dir(
            tmp_path,
            hardware="id,name,year,kind,avg_system_power_watts\r\np100,P100,2016,gpu,300\r\n",
            regions=REGION_HEADER + "r1,R,0.4\n",
        )
        assert load_catalog(path).hardware["p100"].avg_system_power_watts == 300.0

    def test_pue_below_one_rejected(self, tmp_path):
        path = write_catalog_dir(
            tmp_path,
            regions=REGION_HEADER + "r1,R,0.4\n",
            datacenters=DC_HEADER + "d1,DC,r1,0.9\n",
        )
        with pytest.raises(ParseError) as err:
            load_catalog(path)
        assert "pue" in str(err.value)
        assert err.value.file == "datacenters.csv"
        assert err.value.line == 2

    def test_missing_file(self, tmp_path):
        (tmp_path / "hardware.csv").write_text(HW_HEADER)
        with pytest.raises(NotFoundError):
            load_catalog(str(tmp_path))

    def test_missing_directory(self, tmp_path):
        with pytest.raises(NotFoundError):
            load_catalog(str(tmp_path / "nope"))

    def test_unknown_column_rejected(self, tmp_path):
        path = write_catalog_dir(
            tmp_path,
            hardware="id,name,year,kind,avg_system_power_watts,price\n",
            regions=REGION_HEADER + "r1,R,0.4\n",
        )
        with pytest.raises(ParseError) as err:
            load_catalog(path)
        assert err.value.line == 1

    def test_non_numeric_power_names_file_and_line(self, tmp_path):
        path = write_catalog_dir(
            tmp_path,
            hardware=HW_HEADER + "a,A,2020,gpu,300\nb,B,2020,gpu,lots\n",
            regions=REGION_HEADER + "r1,R,0.4\n",
        )
        with pytest.raises(ParseError) as err:
            load_catalog(path)
        assert err.value.file == "hardware.csv"
        assert err.value.line == 3

    def test_nan_rejected(self, tmp_path):
        path = write_catalog_dir(
            tmp_path,
            hardware=HW_HEADER + "a,A,2020,gpu,nan\n",
            regions=REGION_HEADER + "r1,R,0.4\n",
        )
        with pytest.raises(ParseError):
            load_catalog(path)

    def test_duplicate_id(self, tmp_path):
        path = write_catalog_dir(
            tmp_path,
            hardware=HW_HEADER + "a,A,2020,gpu,300\na,A again,2021,gpu,200\n",
            regions=REGION_HEADER + "r1,R,0.4\n",
        )
        with pytest.raises(DuplicateKeyError) as err:
            load_catalog(path)
        assert err.value.key == "a"

    def test_dangling_datacenter_region(self, tmp_path):
        path = write_catalog_dir(
            tmp_path,
            regions=REGION_HEADER + "r1,R,0.4\n",
            datacenters=DC_HEADER + "d1,DC,elsewhere,1.2\n",
        )
        with pytest.raises(UnknownKeyError) as err:
            load_catalog(path)
        assert err.value.key == "elsewhere"

    def test_hourly_must_have_24_rows(self, tmp_path):
        rows = "".join(f"r1,{h},50,0.1\n" for h in range(23))
        path = write_catalog_dir(
            tmp_path, regions=REGION_HEADER + "r1,R,0.4\n", hourly=HOURLY_HEADER + rows
        )
        with pytest.raises(ParseError) as err:
            load_catalog(path)
        assert "24" in str(err.value)

    def test_hourly_duplicate_hour(self, tmp_path):
        rows = "".join(f"r1,{h},50,0.1\n" for h in range(24)) + "r1,5,50,0.1\n"
        path = write_catalog_dir(
            tmp_path, regions=REGION_HEADER + "r1,R,0.4\n", hourly=HOURLY_HEADER + rows
        )
        with pytest.raises(ParseError):
            load_catalog(path)

    def test_hourly_for_unknown_region(self, tmp_path):
        rows = "".join(f"ghost,{h},50,0.1\n" for h in range(24))
        path = write_catalog_dir(
            tmp_path, regions=REGION_HEADER + "r1,R,0.4\n", hourly=HOURLY_HEADER + rows
        )
        with pytest.raises(UnknownKeyError):
            load_catalog(path)

    def test_hourly_intensity_may_be_empty(self, tmp_path):
        rows = "".join(f"r1,{h},93,\n" for h in range(24))
        path = write_catalog_dir(
            tmp_path, regions=REGION_HEADER + "r1,R,0.4\n", hourly=HOURLY_HEADER + rows
        )
        region = load_catalog(path).regions["r1"]
        assert region.hourly is not None
        assert all(p.intensity is None for p in region.hourly)
        assert not region.has_hourly_intensity

    def test_cfe_out_of_range(self, tmp_path):
        rows = "".join(f"r1,{h},50,0.1\n" for h in range(23)) + "r1,23,101,0.1\n"
        path = write_catalog_dir(
            tmp_path, regions=REGION_HEADER + "r1,R,0.4\n", hourly=HOURLY_HEADER + rows
        )
        with pytest.raises(ParseError):
            load_catalog(path)


class TestSaveCatalog:
    def test_seed_round_trips(self, tmp_path, seed_bundle):
        save_catalog(seed_bundle, str(tmp_path))
        assert load_catalog(str(tmp_path)) == seed_bundle

    def test_empty_bundle_round_trips(self, tmp_path):
        empty = CatalogBundle()
        save_catalog(empty, str(tmp_path))
        for name in ("hardware.csv", "datacenters.csv", "regions.csv", "regions_hourly.csv"):
            assert (tmp_path / name).read_text().strip()  # header row present
        assert load_catalog(str(tmp_path)) == empty

    def test_write_to_non_directory_fails(self, tmp_path):
        target = tmp_path / "occupied"
        target.write_text("a file, not a directory")
        with pytest.raises(WriteError):
            save_catalog(CatalogBundle(), str(target))


ids = st.text(alphabet="abcdefghijklmnopqrstuvwxyz0123456789-", min_size=1, max_size=8)
names = st.text(
    alphabet=st.characters(codec="utf-8", exclude_characters="\x00\r"), max_size=20
)
powers = st.floats(min_value=1e-3, max_value=1e5, allow_nan=False, allow_infinity=False)
intensities = st.floats(min_value=0, max_value=10, allow_nan=False, allow_infinity=False)
cfes = st.floats(min_value=0, max_value=100, allow_nan=False, allow_infinity=False)


@st.composite
def bundles(draw) -> CatalogBundle:
    region_ids = draw(st.lists(ids, min_size=1, max_size=3, unique=True))
    regions = {}
    for rid in region_ids:
        hourly = None
        if draw(st.booleans()):
            hourly = tuple(
                HourlyPoint(
                    hour=h,
                    cfe_percent=draw(cfes),
                    intensity=draw(st.one_of(st.none(), intensities)),
                )
                for h in range(24)
            )
        regions[rid] = RegionIntensity(
            region_id=rid, name=draw(names), annual_avg_intensity=draw(intensities), hourly=hourly
        )
    hw_ids = draw(st.lists(ids, min_size=0, max_size=3, unique=True))
    hardware = {
        hid: HardwareProfile(
            id=hid,
            name=draw(names),
            year=draw(st.integers(min_value=1990, max_value=2030)),
            kind=draw(st.sampled_from(["gpu", "tpu", "cpu"])),
            avg_system_power_watts=draw(powers),
            notes=draw(names),
        )
        for hid in hw_ids
    }
    dc_ids = draw(st.lists(ids, min_size=0, max_size=3, unique=True))
    datacenters = {
        did: DatacenterProfile(
            id=did,
            name=draw(names),
            region_id=draw(st.sampled_from(region_ids)),
            pue=draw(st.floats(min_value=1.0, max_value=3.0, allow_nan=False)),
        )
        for did in dc_ids
    }
    return CatalogBundle(hardware=hardware, datacenters=datacenters, regions=regions)


@settings(max_examples=30, deadline=None)
@given(bundle=bundles())
def test_round_trip_property(tmp_path_factory, bundle):
    target = tmp_path_factory.mktemp("roundtrip")
    save_catalog(bundle, str(target))
    assert load_catalog(str(target)) == bundle


class TestSeededConstants:
    def test_datacenters(self, seed_bundle):
        assert seed_bundle.datacenters["avg2020"].pue == 1.58
        assert seed_bundle.datacenters["avg2017"].pue == 1.60
        assert seed_bundle.datacenters["cloud"].pue == 1.10
        assert seed_bundle.datacenters["gcp-oklahoma"].pue == 1.11

    def test_regions(self, seed_bundle):
        assert seed_bundle.regions["avg2020"].annual_avg_intensity == 0.429
        assert seed_bundle.regions["avg2017"].annual_avg_intensity == 0.488
        assert seed_bundle.regions["oklahoma"].annual_avg_intensity == 0.088
        assert seed_bundle.regions["oklahoma"].hourly[0].cfe_percent == 96.0
        assert seed_bundle.regions["iowa"].hourly[12].cfe_percent == 93.0
        assert seed_bundle.regions["nevada"].hourly[12].cfe_percent == 19.0

    def test_tpu2_power_back_solved(self, seed_bundle):
        power = seed_bundle.hardware["tpu2"].avg_system_power_watts
        assert power == pytest.approx(0.0024 / 0.088 / 1.11 / 120 * 1e6, rel=1e-12)
        assert power == pytest.approx(205.0, rel=0.005)

    def test_hardware_set(self, seed_bundle):
        assert set(seed_bundle.hardware) == {"p100", "v100", "tpu2", "tpu4"}
        assert seed_bundle.hardware["p100"].avg_system_power_watts == 300.0

    def test_chile_curve_shape(self, seed_bundle):
        chile = seed_bundle.regions["chile"]
        for point in chile.hourly:
            if 6 <= point.hour <= 19:
                assert point.cfe_percent == 90.0 and point.intensity == 0.05
            else:
                assert point.cfe_percent == 20.0 and point.intensity == 0.50
        assert chile.annual_avg_intensity == pytest.approx((14 * 0.05 + 10 * 0.50) / 24)


class TestTypeInvariants:
    def test_nonpositive_power(self):
        with pytest.raises(ValidationError):
            HardwareProfile("x", "X", 2020, "gpu", 0.0)

    def test_bad_kind(self):
        with pytest.raises(ValidationError):
            HardwareProfile("x", "X", 2020, "fpga", 100.0)

    def test_negative_intensity(self):
        with pytest.raises(ValidationError):
            RegionIntensity("r", "R", -0.1)

    def test_workload_invariants(self):
        with pytest.raises(ValidationError):
            WorkloadSpec("w", 0, 1.0, "gpu")
        with pytest.raises(ValidationError):
            WorkloadSpec("w", 1, 0.0, "gpu")
        with pytest.raises(ValidationError):
            WorkloadSpec("w", 1, float("inf"), "gpu")

    def test_accelerator_years(self):
        workload = WorkloadSpec("w", 10_000, 354.78, "v100")
        assert workload.accelerator_years == pytest.approx(405.0, rel=1e-12)

    def test_bundle_cross_reference(self):
        with pytest.raises(UnknownKeyError):
            CatalogBundle(
                datacenters={"d": DatacenterProfile("d", "D", "ghost", 1.1)},
                regions={},
            )

    def test_bundle_key_mismatch(self):
        with pytest.raises(ValidationError):
            CatalogBundle(hardware={"wrong": HardwareProfile("x", "X", 2020, "gpu", 1.0)})

    def test_unknown_key_lookup(self, seed_bundle):
        with pytest.raises(UnknownKeyError) as err:
            seed_bundle.region_or_raise("atlantis")
        assert err.value.key == "atlantis"
