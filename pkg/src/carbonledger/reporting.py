"""Deterministic rendering of report dictionaries for the CLI.

JSON output is byte-stable: keys sorted, floats rounded to 6 significant
digits before serialization. CSV gets a header row plus one row per list
entry (steps, factors, ranking) or a single row for scalar reports. The
table format is for human eyes only.
"""

from __future__ import annotations

import csv
import io
import json

SIG_DIGITS = 6

FORMATS = ("json", "csv", "table")


def round_sig(value: float, digits: int = SIG_DIGITS) -> float:
    """Round to ``digits`` significant digits (exact for 0, inf, nan)."""
    if value == 0 or value != value or value in (float("inf"), float("-inf")):
        return value
    return float(f"{value:.{digits}g}")


def _round_floats(doc):
    if isinstance(doc, float):
        return round_sig(doc)
    if isinstance(doc, dict):
        return {key: _round_floats(val) for key, val in doc.items()}
    if isinstance(doc, (list, tuple)):
        return [_round_floats(item) for item in doc]
    return doc


def to_json(doc: dict) -> str:
    return json.dumps(_round_floats(doc), sort_keys=True, indent=2) + "\n"


def _flatten(doc: dict, prefix: str = "") -> dict:
    flat: dict = {}
    for key, value in doc.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif not isinstance(value, (list, tuple)):
            flat[name] = value
    return flat


def _rows_key(doc: dict) -> str | None:
    for key in ("steps", "factors", "ranking", "hardware", "datacenters", "regions"):
        if isinstance(doc.get(key), list):
            return key
    return None


def to_csv(doc: dict) -> str:
    """One row per list entry when the report has one; else a single row."""
    doc = _round_floats(doc)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    rows_key = _rows_key(doc)
    if rows_key and doc[rows_key]:
        rows = [_flatten(row) for row in doc[rows_key]]
        header = sorted({key for row in rows for key in row})
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(row.get(col)) for col in header])
    else:
        flat = _flatten(doc)
        header = sorted(flat)
        writer.writerow(header)
        writer.writerow([_cell(flat[col]) for col in header])
    return out.getvalue()


def _cell(value) -> str:
    if value is None:
        return ""
    return str(value)


def to_table(doc: dict) -> str:
    """Aligned key/value lines, with list entries as indented blocks."""
    doc = _round_floats(doc)
    lines: list[str] = []
    scalars = {k: v for k, v in doc.items() if not isinstance(v, (list, dict))}
    if scalars:
        width = max(len(k) for k in scalars)
        for key in scalars:
            lines.append(f"{key.ljust(width)}  {_cell(scalars[key])}")
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{key}:")
            for sub, subval in _flatten(value).items():
                lines.append(f"  {sub} = {_cell(subval)}")
        elif isinstance(value, list):
            lines.append(f"{key}:")
            for item in value:
                if isinstance(item, dict):
                    flat = _flatten(item)
                    lines.append("  - " + "  ".join(f"{k}={_cell(v)}" for k, v in flat.items()))
                else:
                    lines.append(f"  - {_cell(item)}")
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json(doc)
    if fmt == "csv":
        return to_csv(doc)
    if fmt == "table":
        return to_table(doc)
    raise ValueError(f"unknown format {fmt!r}")
