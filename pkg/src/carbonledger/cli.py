"""Command-line front end. One subcommand per analysis, JSON/CSV/table
output, and an embedded ``reproduce`` suite for the headline numbers.

Exit codes: 0 success, 2 validation/usage failure, 1 internal or IO error.
Every subcommand accepts ``--catalog DIR`` and falls back to the
CARBONLEDGER_CATALOG environment variable, then to the built-in seeded
catalog.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import presets, reporting
from .analysis import (
    AuditFactor,
    Scenario,
    WaterfallStep,
    audit,
    breakeven,
    compare,
    evaluate_scenario,
    waterfall,
)
from .catalog import (
    CatalogBundle,
    load_catalog,
    save_catalog,
    seed_paper_defaults,
)
from .errors import CarbonLedgerError, ValidationError, WriteError
from .fleet import FleetSnapshot, fleet_report, mobile_bound
from .placement import PlacementQuery, rank_regions
from .reproduce import run_all
from .service import serve

CATALOG_ENV = "CARBONLEDGER_CATALOG"


def _resolve_catalog(args: argparse.Namespace) -> CatalogBundle:
    directory = args.catalog or os.environ.get(CATALOG_ENV)
    if directory:
        return load_catalog(directory)
    return seed_paper_defaults()


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None


def _emit(doc: dict, args: argparse.Namespace) -> None:
    text = reporting.render(doc, args.format)
    if getattr(args, "out", None):
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            raise WriteError(f"cannot write {args.out!r}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--catalog", metavar="DIR", help="catalog directory (default: built-in)")
    parser.add_argument(
        "--format", choices=reporting.FORMATS, default="json", help="output format"
    )
    parser.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")


def _cmd_catalog(args: argparse.Namespace) -> int:
    if args.catalog_action == "seed":
        save_catalog(seed_paper_defaults(), args.dir)
        print(f"seeded catalog written to {args.dir}")
        return 0
    bundle = _resolve_catalog(args)
    if args.catalog_action == "validate":
        print(
            f"catalog ok: {len(bundle.hardware)} hardware, "
            f"{len(bundle.datacenters)} datacenters, {len(bundle.regions)} regions"
        )
        return 0
    doc = {
        "hardware": [bundle.hardware[k].to_dict() for k in sorted(bundle.hardware)],
        "datacenters": [bundle.datacenters[k].to_dict() for k in sorted(bundle.datacenters)],
        "regions": [bundle.regions[k].to_dict() for k in sorted(bundle.regions)],
    }
    _emit(doc, args)
    return 0


def _cmd_estimate(args: argparse.Namespace) -> int:
    bundle = _resolve_catalog(args)
    scenario = Scenario.from_dict(
        {
            "label": "estimate",
            "workload": _load_json(args.workload),
            "datacenter_id": args.datacenter,
            "region_id": args.region,
            "emissions_method": args.method,
            "start_hour": args.start_hour,
        }
    )
    energy, emissions = evaluate_scenario(scenario, bundle)
    _emit(
        {
            "workload": scenario.workload.to_dict(),
            "energy": energy.to_dict(),
            "emissions": emissions.to_dict(),
        },
        args,
    )
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    bundle = _resolve_catalog(args)
    if args.preset:
        baseline, candidate = presets.compare_preset(args.preset)
    elif args.baseline and args.candidate:
        baseline = Scenario.from_dict(_load_json(args.baseline))
        candidate = Scenario.from_dict(_load_json(args.candidate))
    else:
        raise ValidationError("compare needs --preset or both --baseline and --candidate")
    _emit(compare(baseline, candidate, bundle).to_dict(), args)
    return 0


def _cmd_waterfall(args: argparse.Namespace) -> int:
    if args.preset:
        label, steps = presets.waterfall_preset(args.preset)
        if args.baseline_label:
            label = args.baseline_label
    elif args.steps:
        doc = _load_json(args.steps)
        if not isinstance(doc, list):
            raise ValidationError("--steps file must hold a JSON list of steps")
        steps = [WaterfallStep.from_dict(step) for step in doc]
        label = args.baseline_label or ""
    else:
        raise ValidationError("waterfall needs --preset or --steps")
    _emit(waterfall(label, steps).to_dict(), args)
    return 0


def _parse_factor(text: str) -> AuditFactor:
    name, sep, value = text.rpartition("=")
    if not sep:
        raise ValidationError(f"--factor must look like NAME=VALUE, got {text!r}")
    try:
        return AuditFactor(name, float(value))
    except ValueError:
        raise ValidationError(f"--factor value must be a number, got {value!r}") from None


def _cmd_audit(args: argparse.Namespace) -> int:
    if args.preset:
        published, factors, actual = presets.audit_preset(args.preset)
    elif args.published is not None:
        published = args.published
        factors = [_parse_factor(text) for text in args.factor or []]
        actual = args.actual
    else:
        raise ValidationError("audit needs --preset or --published")
    _emit(audit(published, factors, actual).to_dict(), args)
    return 0


def _cmd_breakeven(args: argparse.Namespace) -> int:
    if args.preset:
        cost, saving = presets.breakeven_preset(args.preset)
        unit = "MWh"
    elif args.cost is not None and args.saving is not None:
        cost, saving, unit = args.cost, args.saving, args.unit
    else:
        raise ValidationError("breakeven needs --preset or both --cost and --saving")
    _emit(breakeven(cost, saving, unit).to_dict(), args)
    return 0


def _cmd_place(args: argparse.Namespace) -> int:
    bundle = _resolve_catalog(args)
    query = PlacementQuery.from_dict(
        {
            "workload": _load_json(args.workload),
            "candidate_region_ids": [r.strip() for r in args.regions.split(",") if r.strip()],
            "datacenter_id": args.datacenter,
            "objective": args.objective,
            "earliest_start": args.earliest,
            "latest_start": args.latest,
        }
    )
    _emit(rank_regions(query, bundle).to_dict(), args)
    return 0


def _cmd_fleet(args: argparse.Namespace) -> int:
    if args.preset:
        snapshot = presets.fleet_preset(args.preset)
    elif args.snapshot:
        snapshot = FleetSnapshot.from_dict(_load_json(args.snapshot))
    else:
        raise ValidationError("fleet needs --preset or --snapshot")
    _emit(fleet_report(snapshot).to_dict(), args)
    return 0


def _cmd_mobile(args: argparse.Namespace) -> int:
    if args.preset:
        phones, phone_twh, share, server_twh = presets.mobile_preset(args.preset)
    elif None not in (args.phones, args.phone_twh, args.ml_share, args.server_twh):
        phones, phone_twh, share, server_twh = (
            args.phones,
            args.phone_twh,
            args.ml_share,
            args.server_twh,
        )
    else:
        raise ValidationError(
            "mobile needs --preset or all of --phones --phone-twh --ml-share --server-twh"
        )
    _emit(mobile_bound(phones, phone_twh, share, server_twh).to_dict(), args)
    return 0


def _cmd_reproduce(args: argparse.Namespace) -> int:
    results = run_all()
    for result in results:
        mark = "PASS" if result.passed else "FAIL"
        print(f"{mark}  {result.number:>2}  {result.description}")
        if args.verbose or not result.passed:
            print(f"          {result.detail}")
    failed = sum(1 for r in results if not r.passed)
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return 0 if failed == 0 else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    serve(args.catalog or os.environ.get(CATALOG_ENV), args.bind)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carbonledger",
        description="Gross-carbon accounting for ML training workloads.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_catalog = sub.add_parser("catalog", help="validate, seed, or show reference data")
    catalog_sub = p_catalog.add_subparsers(dest="catalog_action", required=True)
    p_validate = catalog_sub.add_parser("validate", help="load a catalog and report its shape")
    _add_common(p_validate)
    p_seed = catalog_sub.add_parser("seed", help="write the built-in catalog as CSV files")
    p_seed.add_argument("dir", help="output directory")
    p_show = catalog_sub.add_parser("show", help="dump every catalog entity")
    _add_common(p_show)
    p_catalog.set_defaults(func=_cmd_catalog)

    p_estimate = sub.add_parser("estimate", help="energy and gross CO2e for a workload")
    _add_common(p_estimate)
    p_estimate.add_argument("--workload", required=True, metavar="FILE", help="workload JSON")
    p_estimate.add_argument("--datacenter", required=True, help="datacenter id (PUE source)")
    p_estimate.add_argument("--region", required=True, help="region id (intensity source)")
    p_estimate.add_argument("--method", choices=("flat", "hourly"), default="flat")
    p_estimate.add_argument("--start-hour", type=int, default=None, help="0-23, hourly only")
    p_estimate.set_defaults(func=_cmd_estimate)

    p_compare = sub.add_parser("compare", help="baseline/candidate scenario ratios")
    _add_common(p_compare)
    p_compare.add_argument("--preset", choices=sorted(presets.COMPARE_PRESETS))
    p_compare.add_argument("--baseline", metavar="FILE", help="baseline scenario JSON")
    p_compare.add_argument("--candidate", metavar="FILE", help="candidate scenario JSON")
    p_compare.set_defaults(func=_cmd_compare)

    p_waterfall = sub.add_parser("waterfall", help="multiplicative reduction decomposition")
    _add_common(p_waterfall)
    p_waterfall.add_argument("--preset", choices=sorted(presets.WATERFALL_PRESETS))
    p_waterfall.add_argument("--steps", metavar="FILE", help="JSON list of steps")
    p_waterfall.add_argument("--baseline-label", help="label for the undivided baseline")
    p_waterfall.set_defaults(func=_cmd_waterfall)

    p_audit = sub.add_parser("audit", help="decompose a published estimate into factors")
    _add_common(p_audit)
    p_audit.add_argument("--preset", choices=sorted(presets.AUDIT_PRESETS))
    p_audit.add_argument("--published", type=float, help="published tCO2e")
    p_audit.add_argument(
        "--factor", action="append", metavar="NAME=VALUE", help="overestimation factor (repeatable)"
    )
    p_audit.add_argument("--actual", type=float, default=None, help="actual tCO2e, if known")
    p_audit.set_defaults(func=_cmd_audit)

    p_breakeven = sub.add_parser("breakeven", help="amortize a one-time search cost")
    _add_common(p_breakeven)
    p_breakeven.add_argument("--preset", choices=sorted(presets.BREAKEVEN_PRESETS))
    p_breakeven.add_argument("--cost", type=float, help="one-time search cost")
    p_breakeven.add_argument("--saving", type=float, help="saving per downstream training")
    p_breakeven.add_argument("--unit", default="MWh", help="unit label (MWh or tCO2e)")
    p_breakeven.set_defaults(func=_cmd_breakeven)

    p_place = sub.add_parser("place", help="rank regions and start hours for a workload")
    _add_common(p_place)
    p_place.add_argument("--workload", required=True, metavar="FILE", help="workload JSON")
    p_place.add_argument("--datacenter", required=True, help="datacenter id (PUE source)")
    p_place.add_argument(
        "--regions", required=True, metavar="ID,ID,...", help="candidate region ids"
    )
    p_place.add_argument(
        "--objective", choices=("min_intensity", "max_cfe"), default="min_intensity"
    )
    p_place.add_argument("--earliest", type=int, default=0, help="earliest start hour")
    p_place.add_argument("--latest", type=int, default=23, help="latest start hour")
    p_place.set_defaults(func=_cmd_place)

    p_fleet = sub.add_parser("fleet", help="ML share of a fleet energy snapshot")
    _add_common(p_fleet)
    p_fleet.add_argument("--preset", choices=sorted(presets.FLEET_PRESETS))
    p_fleet.add_argument("--snapshot", metavar="FILE", help="fleet snapshot JSON")
    p_fleet.set_defaults(func=_cmd_fleet)

    p_mobile = sub.add_parser("mobile", help="server-side vs phone-side ML energy bound")
    _add_common(p_mobile)
    p_mobile.add_argument("--preset", choices=sorted(presets.MOBILE_PRESETS))
    p_mobile.add_argument("--phones", type=float, help="number of phones")
    p_mobile.add_argument("--phone-twh", type=float, help="global phone energy, TWh/year")
    p_mobile.add_argument("--ml-share", type=float, help="upper bound on the ML share, 0-1")
    p_mobile.add_argument("--server-twh", type=float, help="server-side ML energy, TWh/year")
    p_mobile.set_defaults(func=_cmd_mobile)

    p_reproduce = sub.add_parser("reproduce", help="re-derive the headline numbers and report pass/fail")
    p_reproduce.add_argument("--verbose", action="store_true", help="print detail for passing rows")
    p_reproduce.set_defaults(func=_cmd_reproduce)

    p_serve = sub.add_parser("serve", help="run the JSON HTTP API")
    p_serve.add_argument("--catalog", metavar="DIR", help="catalog directory (default: built-in)")
    p_serve.add_argument("--bind", default="127.0.0.1:8080", metavar="HOST:PORT")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WriteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CarbonLedgerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
