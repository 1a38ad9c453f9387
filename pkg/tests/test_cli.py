from __future__ import annotations

import json

import pytest

from carbonledger.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def workload_file(tmp_path):
    path = tmp_path / "workload.json"
    path.write_text(
        json.dumps(
            {
                "label": "reference",
                "processor_count": 10000,
                "duration_hours": 24,
                "hardware_id": "p100",
            }
        )
    )
    return str(path)


class TestEstimate:
    def test_json_output(self, capsys, workload_file):
        code, out, _ = run_cli(
            capsys,
            "estimate",
            "--workload",
            workload_file,
            "--datacenter",
            "avg2020",
            "--region",
            "avg2020",
            "--format",
            "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["energy"]["it_mwh"] == 72.0
        assert doc["energy"]["total_mwh"] == pytest.approx(113.76)
        assert doc["emissions"]["method"] == "flat"

    def test_byte_identical_runs(self, capsys, workload_file):
        args = ("estimate", "--workload", workload_file, "--datacenter", "cloud", "--region", "oklahoma")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second

    def test_unknown_region_exits_2(self, capsys, workload_file):
        code, _, err = run_cli(
            capsys, "estimate", "--workload", workload_file, "--datacenter", "cloud", "--region", "xx"
        )
        assert code == 2
        assert "xx" in err

    def test_missing_workload_file_exits_2(self, capsys):
        code, _, err = run_cli(
            capsys, "estimate", "--workload", "/no/such.json", "--datacenter", "cloud", "--region", "oklahoma"
        )
        assert code == 2
        assert "no such file" in err

    def test_hourly_method(self, capsys, workload_file):
        code, out, _ = run_cli(
            capsys,
            "estimate",
            "--workload",
            workload_file,
            "--datacenter",
            "cloud",
            "--region",
            "chile",
            "--method",
            "hourly",
            "--start-hour",
            "6",
        )
        assert code == 0
        assert json.loads(out)["emissions"]["start_hour"] == 6


class TestWaterfall:
    def test_preset_via_presets(self, capsys):
        code, out, _ = run_cli(capsys, "waterfall", "--preset", "figure1-2021")
        assert code == 0
        doc = json.loads(out)
        assert doc["total_emissions_reduction"] == 725.004
        assert doc["total_energy_reduction"] == 80.556

    def test_steps_file(self, capsys, tmp_path):
        steps = tmp_path / "steps.json"
        steps.write_text(
            json.dumps(
                [
                    {"dimension": "model", "description": "m", "energy_factor": 2.0},
                    {"dimension": "map", "description": "relocate", "emissions_only_factor": 4.0},
                ]
            )
        )
        code, out, _ = run_cli(
            capsys, "waterfall", "--steps", str(steps), "--baseline-label", "base"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["total_emissions_reduction"] == 8.0

    def test_needs_input(self, capsys):
        code, _, err = run_cli(capsys, "waterfall")
        assert code == 2
        assert "preset" in err


class TestOtherSubcommands:
    def test_compare_preset(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--preset", "figure3")
        assert code == 0
        assert json.loads(out)["emissions_ratio"] == 13.65

    def test_audit_flags(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "audit",
            "--published",
            "284",
            "--factor",
            "hardware=5.0",
            "--factor",
            "proxy=18.7",
            "--actual",
            "3.2",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["combined_factor"] == 93.5
        assert doc["residual_ratio"] == pytest.approx(0.949198, rel=1e-5)

    def test_audit_bad_factor(self, capsys):
        code, _, err = run_cli(capsys, "audit", "--published", "10", "--factor", "oops")
        assert code == 2

    def test_breakeven_flags(self, capsys):
        code, out, _ = run_cli(capsys, "breakeven", "--cost", "6.2", "--saving", "0.5")
        assert code == 0
        assert json.loads(out)["breakeven_count"] == 13

    def test_place_csv(self, capsys, workload_file):
        code, out, _ = run_cli(
            capsys,
            "place",
            "--workload",
            workload_file,
            "--datacenter",
            "cloud",
            "--regions",
            "iowa,nevada",
            "--objective",
            "max_cfe",
            "--format",
            "csv",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "best_start_hour,objective_value,region_id"
        assert lines[1].endswith("iowa")

    def test_fleet_preset(self, capsys):
        code, out, _ = run_cli(capsys, "fleet", "--preset", "google-2020")
        assert code == 0
        assert json.loads(out)["ml_fraction"] == 0.15

    def test_mobile_flags(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "mobile",
            "--phones",
            "3.8e9",
            "--phone-twh",
            "7.9",
            "--ml-share",
            "0.05",
            "--server-twh",
            "2.31",
        )
        assert code == 0
        assert json.loads(out)["client_ml_bound_twh"] == 0.395


class TestCatalogCommands:
    def test_seed_then_validate_and_use(self, capsys, tmp_path, workload_file, monkeypatch):
        target = str(tmp_path / "cat")
        code, out, _ = run_cli(capsys, "catalog", "seed", target)
        assert code == 0

        code, out, _ = run_cli(capsys, "catalog", "validate", "--catalog", target)
        assert code == 0
        assert "catalog ok" in out

        # env var fallback drives every subcommand
        monkeypatch.setenv("CARBONLEDGER_CATALOG", target)
        code, out, _ = run_cli(
            capsys, "estimate", "--workload", workload_file, "--datacenter", "cloud", "--region", "oklahoma"
        )
        assert code == 0
        assert json.loads(out)["emissions"]["effective_intensity"] == 0.088

    def test_validate_rejects_broken_catalog(self, capsys, tmp_path):
        (tmp_path / "hardware.csv").write_text("id,name\n")
        code, _, err = run_cli(capsys, "catalog", "validate", "--catalog", str(tmp_path))
        assert code == 2

    def test_show_lists_entities(self, capsys):
        code, out, _ = run_cli(capsys, "catalog", "show")
        doc = json.loads(out)
        assert {h["id"] for h in doc["hardware"]} == {"p100", "v100", "tpu2", "tpu4"}


class TestOutputFile:
    def test_out_flag_writes_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys, "waterfall", "--preset", "figure1-2019", "--out", str(target)
        )
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["total_energy_reduction"] == 10.374


class TestUsageErrors:
    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2
        assert "usage" in capsys.readouterr().err

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["waterfall", "--bogus"])
        assert exc.value.code == 2


class TestReproduce:
    def test_all_rows_pass(self, capsys):
        code, out, _ = run_cli(capsys, "reproduce")
        assert code == 0
        assert "14/14 criteria passed" in out
        assert out.count("PASS") == 14
        assert "FAIL" not in out
