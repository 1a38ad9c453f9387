from __future__ import annotations

import json

from carbonledger.reporting import render, round_sig, to_csv, to_json


class TestRoundSig:
    def test_six_significant_digits(self):
        assert round_sig(725.00399999) == 725.004
        assert round_sig(0.0001234567) == 0.000123457
        assert round_sig(118341.25) == 118341.0
        assert round_sig(0.0) == 0.0
        assert round_sig(-13.6499999) == -13.65

    def test_integers_pass_through_json(self):
        doc = {"count": 13, "value": 1.23456789}
        parsed = json.loads(to_json(doc))
        assert parsed["count"] == 13
        assert parsed["value"] == 1.23457


class TestJson:
    def test_sorted_and_stable(self):
        doc = {"b": 1.0, "a": {"z": 2.0, "y": [1.5, {"k": 3.0}]}}
        assert to_json(doc) == to_json(doc)
        parsed = json.loads(to_json(doc))
        assert list(parsed) == ["a", "b"]

    def test_trailing_newline(self):
        assert to_json({"x": 1}).endswith("\n")


class TestCsv:
    def test_steps_become_rows(self):
        doc = {
            "total": 6.0,
            "steps": [
                {"dimension": "model", "energy_factor": 2.0},
                {"dimension": "machine", "energy_factor": 3.0},
            ],
        }
        lines = to_csv(doc).strip().splitlines()
        assert lines[0] == "dimension,energy_factor"
        assert lines[1] == "model,2.0"
        assert len(lines) == 3

    def test_scalar_report_single_row(self):
        lines = to_csv({"b": 2.0, "a": 1.0}).strip().splitlines()
        assert lines == ["a,b", "1.0,2.0"]

    def test_none_becomes_empty_cell(self):
        lines = to_csv({"ratio": None, "x": 1.0}).strip().splitlines()
        assert lines[1] == ",1.0"


class TestRender:
    def test_table_contains_values(self):
        text = render({"alpha": 1.5, "nested": {"beta": 2.0}}, "table")
        assert "alpha" in text and "1.5" in text and "beta" in text

    def test_unknown_format(self):
        try:
            render({}, "yaml")
        except ValueError as err:
            assert "yaml" in str(err)
        else:
            raise AssertionError("expected ValueError")
