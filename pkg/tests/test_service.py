from __future__ import annotations

import pytest

httpx = pytest.importorskip("httpx")

from carbonledger import load_catalog, save_catalog, seed_paper_defaults
from carbonledger.service import CatalogHolder, start_background


@pytest.fixture(scope="module")
def api():
    server, base = start_background()
    with httpx.Client(base_url=base, timeout=10.0) as client:
        yield client
    server.shutdown()
    server.server_close()


class TestHealthAndCatalog:
    def test_health(self, api):
        response = api.get("/v1/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}

    def test_regions_include_oklahoma(self, api):
        regions = {r["region_id"]: r for r in api.get("/v1/catalog/regions").json()}
        assert regions["oklahoma"]["annual_avg_intensity"] == 0.088
        assert len(regions["oklahoma"]["hourly"]) == 24

    def test_hardware_and_datacenters(self, api):
        hardware = {h["id"] for h in api.get("/v1/catalog/hardware").json()}
        assert {"p100", "v100", "tpu2", "tpu4"} <= hardware
        datacenters = {d["id"]: d for d in api.get("/v1/catalog/datacenters").json()}
        assert datacenters["avg2020"]["pue"] == 1.58

    def test_cors_headers(self, api):
        response = api.get("/v1/health")
        assert response.headers["access-control-allow-origin"] == "*"
        preflight = api.options("/v1/estimate")
        assert preflight.status_code == 204

    def test_unknown_endpoint(self, api):
        response = api.get("/v1/nothing")
        assert response.status_code == 404
        assert response.json()["code"] == "not_found"


ESTIMATE_BODY = {
    "workload": {
        "label": "ref",
        "processor_count": 10_000,
        "duration_hours": 24.0,
        "hardware_id": "p100",
    },
    "datacenter_id": "cloud",
    "region_id": "avg2020",
    "method": "flat",
}


class TestEstimateEndpoint:
    def test_flat(self, api):
        doc = api.post("/v1/estimate", json=ESTIMATE_BODY).json()
        assert doc["energy"]["it_mwh"] == pytest.approx(72.0)
        assert doc["energy"]["total_mwh"] == pytest.approx(79.2)
        assert doc["emissions"]["gross_tco2e"] == pytest.approx(79.2 * 0.429)
        assert doc["emissions"]["method"] == "flat"

    def test_hourly(self, api):
        body = dict(ESTIMATE_BODY, region_id="chile", method="hourly", start_hour=6)
        body["workload"] = dict(body["workload"], duration_hours=10.0)
        doc = api.post("/v1/estimate", json=body).json()
        assert doc["emissions"]["effective_intensity"] == pytest.approx(0.05)
        assert doc["emissions"]["start_hour"] == 6

    def test_unknown_region_is_404(self, api):
        response = api.post("/v1/estimate", json=dict(ESTIMATE_BODY, region_id="atlantis"))
        assert response.status_code == 404
        body = response.json()
        assert body["code"] == "reference_error"
        assert "atlantis" in body["message"]

    def test_missing_hourly_is_422(self, api):
        response = api.post(
            "/v1/estimate", json=dict(ESTIMATE_BODY, method="hourly", start_hour=3)
        )
        assert response.status_code == 422
        assert response.json()["code"] == "missing_hourly_data"

    def test_malformed_body_is_400(self, api):
        response = api.post(
            "/v1/estimate", content=b"{not json", headers={"Content-Type": "application/json"}
        )
        assert response.status_code == 400
        assert response.json()["code"] == "validation_error"

    def test_bad_field_is_400(self, api):
        body = dict(ESTIMATE_BODY, workload=dict(ESTIMATE_BODY["workload"], processor_count=0))
        response = api.post("/v1/estimate", json=body)
        assert response.status_code == 400
        assert response.json()["code"] == "validation_error"

    def test_hourly_fractional_start_is_400(self, api):
        body = dict(ESTIMATE_BODY, region_id="chile", method="hourly", start_hour=6.5)
        response = api.post("/v1/estimate", json=body)
        assert response.status_code == 400


class TestAnalysisEndpoints:
    def test_waterfall_preset(self, api):
        doc = api.post("/v1/waterfall", json={"preset": "figure1-2021"}).json()
        assert doc["total_emissions_reduction"] == pytest.approx(725.004)
        assert len(doc["steps"]) == 4

    def test_waterfall_explicit_steps(self, api):
        body = {
            "baseline_label": "b",
            "steps": [
                {"dimension": "model", "description": "x", "energy_factor": 2.0},
                {"dimension": "map", "description": "y", "emissions_only_factor": 3.0},
            ],
        }
        doc = api.post("/v1/waterfall", json=body).json()
        assert doc["total_energy_reduction"] == 2.0
        assert doc["total_emissions_reduction"] == 6.0

    def test_waterfall_unknown_preset_is_404(self, api):
        response = api.post("/v1/waterfall", json={"preset": "figure9"})
        assert response.status_code == 404
        assert response.json()["code"] == "reference_error"

    def test_compare_preset(self, api):
        doc = api.post("/v1/compare", json={"preset": "figure3"}).json()
        assert doc["emissions_ratio"] == pytest.approx(13.65, rel=1e-6)

    def test_audit_preset(self, api):
        doc = api.post("/v1/audit", json={"preset": "umass-audit"}).json()
        assert doc["combined_factor"] == pytest.approx(93.5)
        assert doc["recomputed_tco2e"] == pytest.approx(284.0 / 93.5)

    def test_audit_explicit(self, api):
        body = {"published_tco2e": 100.0, "factors": [{"name": "f", "factor": 4.0}]}
        doc = api.post("/v1/audit", json=body).json()
        assert doc["recomputed_tco2e"] == pytest.approx(25.0)
        assert "actual_tco2e" not in doc

    def test_breakeven(self, api):
        doc = api.post(
            "/v1/breakeven", json={"search_cost": 6.2, "per_training_saving": 0.5}
        ).json()
        assert doc["breakeven_count"] == 13

    def test_place(self, api):
        body = {
            "workload": ESTIMATE_BODY["workload"],
            "candidate_region_ids": ["chile", "oklahoma"],
            "datacenter_id": "cloud",
            "objective": "max_cfe",
        }
        doc = api.post("/v1/place", json=body).json()
        assert doc["chosen"]["region_id"] == "oklahoma"
        assert doc["ranking"][0]["objective_value"] == 96.0

    def test_statelessness(self, api):
        first = api.post("/v1/compare", json={"preset": "figure3"})
        second = api.post("/v1/compare", json={"preset": "figure3"})
        assert first.content == second.content


class TestCatalogHolder:
    def test_reload_swaps_snapshot(self, tmp_path):
        save_catalog(seed_paper_defaults(), str(tmp_path))
        holder = CatalogHolder(str(tmp_path))
        before = holder.snapshot
        hardware_csv = tmp_path / "hardware.csv"
        content = hardware_csv.read_text().replace("NVIDIA P100", "Renamed P100")
        hardware_csv.write_text(content)
        holder.reload()
        assert holder.snapshot is not before
        assert holder.snapshot.hardware["p100"].name == "Renamed P100"
        assert before.hardware["p100"].name == "NVIDIA P100"

    def test_failed_reload_keeps_old_snapshot(self, tmp_path):
        save_catalog(seed_paper_defaults(), str(tmp_path))
        holder = CatalogHolder(str(tmp_path))
        before = holder.snapshot
        (tmp_path / "hardware.csv").write_text("broken")
        with pytest.raises(Exception):
            holder.reload()
        assert holder.snapshot is before

    def test_reload_or_keep_never_raises(self, tmp_path):
        # the SIGHUP path: a broken catalog must not take the server down
        save_catalog(seed_paper_defaults(), str(tmp_path))
        holder = CatalogHolder(str(tmp_path))
        before = holder.snapshot
        (tmp_path / "hardware.csv").write_text("broken")
        error = holder.reload_or_keep()
        assert error is not None and "hardware.csv" in error
        assert holder.snapshot is before
        save_catalog(seed_paper_defaults(), str(tmp_path))
        assert holder.reload_or_keep() is None
        assert holder.snapshot is not before

    def test_default_holder_seeds(self):
        holder = CatalogHolder()
        assert holder.snapshot == seed_paper_defaults()

    def test_holder_reads_directory(self, tmp_path):
        save_catalog(seed_paper_defaults(), str(tmp_path))
        assert CatalogHolder(str(tmp_path)).snapshot == load_catalog(str(tmp_path))
