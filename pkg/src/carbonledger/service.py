"""Stateless JSON-over-HTTP API for catalog browsing and every analysis.

Endpoints (all JSON, UTF-8):

    GET  /v1/health               -> {"status": "ok"}
    GET  /v1/catalog/hardware     -> [HardwareProfile...]
    GET  /v1/catalog/datacenters  -> [DatacenterProfile...]
    GET  /v1/catalog/regions      -> [RegionIntensity...]
    POST /v1/estimate             {workload, datacenter_id, region_id,
                                   method, start_hour?} -> {workload, energy, emissions}
    POST /v1/waterfall            {baseline_label, steps[]} | {preset} -> WaterfallReport
    POST /v1/compare              {baseline, candidate} | {preset} -> ComparisonReport
    POST /v1/audit                {published_tco2e, factors[], actual_tco2e?} | {preset}
    POST /v1/breakeven            {search_cost, per_training_saving, unit?} | {preset}
    POST /v1/place                PlacementQuery -> PlacementResult

Every non-2xx body is exactly one error object {code, message, detail?}:
400 validation_error for malformed bodies, 404 reference_error for unknown
keys, 422 missing_hourly_data, 500 internal only for bugs. Responses carry
full-precision numbers straight from the library (the service adds no
arithmetic) plus permissive cross-origin headers so a separately served web
UI can call it during development.

The catalog is loaded once into an immutable snapshot shared by all request
threads; SIGHUP swaps in a freshly loaded snapshot atomically, letting
in-flight requests finish on the old one.
"""

from __future__ import annotations

import json
import signal
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import presets
from .analysis import (
    AuditFactor,
    Scenario,
    audit,
    breakeven,
    compare,
    evaluate_scenario,
    waterfall,
    WaterfallStep,
)
from .catalog import CatalogBundle, load_catalog, seed_paper_defaults
from .errors import (
    CarbonLedgerError,
    MissingHourlyDataError,
    UnknownKeyError,
    ValidationError,
)
from .placement import PlacementQuery, rank_regions

MAX_BODY_BYTES = 1 << 20


class CatalogHolder:
    """Atomic handle on the current catalog snapshot."""

    def __init__(self, catalog_dir: str | None = None):
        self.catalog_dir = catalog_dir
        self._snapshot = load_catalog(catalog_dir) if catalog_dir else seed_paper_defaults()

    @property
    def snapshot(self) -> CatalogBundle:
        return self._snapshot

    def reload(self) -> None:
        # build fully, then swap; a failed reload keeps the old snapshot
        fresh = load_catalog(self.catalog_dir) if self.catalog_dir else seed_paper_defaults()
        self._snapshot = fresh

    def reload_or_keep(self) -> str | None:
        """Reload, returning an error message (and keeping the current
        snapshot) instead of raising; for use from signal handlers."""
        try:
            self.reload()
            return None
        except (CarbonLedgerError, OSError) as exc:
            return str(exc)


class _HttpError(Exception):
    def __init__(self, status: int, code: str, message: str, detail=None):
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail


def _require_dict(body, what: str = "request body") -> dict:
    if not isinstance(body, dict):
        raise ValidationError(f"{what} must be a JSON object")
    return body


def _handle_estimate(body: dict, catalog: CatalogBundle) -> dict:
    body = _require_dict(body)
    scenario = Scenario.from_dict(
        {
            "label": body.get("label", ""),
            "workload": body.get("workload"),
            "datacenter_id": body.get("datacenter_id", ""),
            "region_id": body.get("region_id", ""),
            "emissions_method": body.get("method", "flat"),
            "start_hour": body.get("start_hour"),
        }
    )
    energy, emissions = evaluate_scenario(scenario, catalog)
    return {
        "workload": scenario.workload.to_dict(),
        "energy": energy.to_dict(),
        "emissions": emissions.to_dict(),
    }


def _handle_waterfall(body: dict, catalog: CatalogBundle) -> dict:
    body = _require_dict(body)
    if "preset" in body:
        label, steps = presets.waterfall_preset(str(body["preset"]))
    else:
        raw_steps = body.get("steps")
        if not isinstance(raw_steps, list):
            raise ValidationError("waterfall request needs 'steps' (a list) or 'preset'")
        steps = [WaterfallStep.from_dict(_require_dict(s, "step")) for s in raw_steps]
        label = str(body.get("baseline_label", ""))
    return waterfall(label, steps).to_dict()


def _handle_compare(body: dict, catalog: CatalogBundle) -> dict:
    body = _require_dict(body)
    if "preset" in body:
        baseline, candidate = presets.compare_preset(str(body["preset"]))
    else:
        baseline = Scenario.from_dict(_require_dict(body.get("baseline"), "baseline"))
        candidate = Scenario.from_dict(_require_dict(body.get("candidate"), "candidate"))
    return compare(baseline, candidate, catalog).to_dict()


def _handle_audit(body: dict, catalog: CatalogBundle) -> dict:
    body = _require_dict(body)
    if "preset" in body:
        published, factors, actual = presets.audit_preset(str(body["preset"]))
    else:
        try:
            published = float(body["published_tco2e"])
        except KeyError:
            raise ValidationError("audit request is missing 'published_tco2e'") from None
        except (TypeError, ValueError):
            raise ValidationError("'published_tco2e' must be a number") from None
        factors = []
        for raw in body.get("factors", []):
            raw = _require_dict(raw, "factor")
            try:
                factors.append(AuditFactor(str(raw.get("name", "")), float(raw["factor"])))
            except KeyError:
                raise ValidationError("audit factor is missing 'factor'") from None
            except (TypeError, ValueError):
                raise ValidationError("audit 'factor' must be a number") from None
        actual = body.get("actual_tco2e")
        if actual is not None:
            try:
                actual = float(actual)
            except (TypeError, ValueError):
                raise ValidationError("'actual_tco2e' must be a number") from None
    return audit(published, factors, actual).to_dict()


def _handle_breakeven(body: dict, catalog: CatalogBundle) -> dict:
    body = _require_dict(body)
    if "preset" in body:
        cost, saving = presets.breakeven_preset(str(body["preset"]))
        unit = "MWh"
    else:
        try:
            cost = float(body["search_cost"])
            saving = float(body["per_training_saving"])
        except KeyError as exc:
            raise ValidationError(f"breakeven request is missing {exc.args[0]!r}") from None
        except (TypeError, ValueError):
            raise ValidationError("breakeven costs must be numbers") from None
        unit = str(body.get("unit", "MWh"))
    return breakeven(cost, saving, unit).to_dict()


def _handle_place(body: dict, catalog: CatalogBundle) -> dict:
    query = PlacementQuery.from_dict(_require_dict(body))
    return rank_regions(query, catalog).to_dict()


_POST_ROUTES = {
    "/v1/estimate": _handle_estimate,
    "/v1/waterfall": _handle_waterfall,
    "/v1/compare": _handle_compare,
    "/v1/audit": _handle_audit,
    "/v1/breakeven": _handle_breakeven,
    "/v1/place": _handle_place,
}

_CATALOG_LISTS = ("hardware", "datacenters", "regions")


class ApiHandler(BaseHTTPRequestHandler):
    server: "ApiServer"
    protocol_version = "HTTP/1.1"

    def log_message(self, format, *args):  # noqa: A002 - stdlib signature
        pass

    def _send_json(self, status: int, doc) -> None:
        payload = json.dumps(doc, sort_keys=True).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        self.wfile.write(payload)

    def _send_error_doc(self, status: int, code: str, message: str, detail=None) -> None:
        doc = {"code": code, "message": message}
        if detail is not None:
            doc["detail"] = detail
        self._send_json(status, doc)

    def do_OPTIONS(self) -> None:  # CORS preflight
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self) -> None:
        catalog = self.server.holder.snapshot
        if self.path == "/v1/health":
            self._send_json(200, {"status": "ok"})
            return
        if self.path.startswith("/v1/catalog/"):
            kind = self.path[len("/v1/catalog/") :]
            if kind in _CATALOG_LISTS:
                entries = getattr(catalog, kind)
                self._send_json(
                    200, [entries[key].to_dict() for key in sorted(entries)]
                )
                return
        self._send_error_doc(404, "not_found", f"no such endpoint: GET {self.path}")

    def do_POST(self) -> None:
        handler = _POST_ROUTES.get(self.path)
        if handler is None:
            self._send_error_doc(404, "not_found", f"no such endpoint: POST {self.path}")
            return
        try:
            body = self._read_body()
            result = handler(body, self.server.holder.snapshot)
        except _HttpError as exc:
            self._send_error_doc(exc.status, exc.code, exc.message, exc.detail)
        except UnknownKeyError as exc:
            self._send_error_doc(404, exc.code, str(exc), {"key": exc.key, "kind": exc.kind})
        except MissingHourlyDataError as exc:
            self._send_error_doc(422, exc.code, str(exc))
        except ValidationError as exc:
            self._send_error_doc(400, exc.code, str(exc))
        except CarbonLedgerError as exc:
            self._send_error_doc(400, "validation_error", str(exc))
        except Exception as exc:  # pragma: no cover - bug path
            self._send_error_doc(500, "internal", f"{type(exc).__name__}: {exc}")
        else:
            self._send_json(200, result)

    def _read_body(self) -> dict:
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError:
            raise _HttpError(400, "validation_error", "bad Content-Length header") from None
        if length > MAX_BODY_BYTES:
            raise _HttpError(400, "validation_error", "request body too large")
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise _HttpError(400, "validation_error", "request body must be a JSON object")
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise _HttpError(400, "validation_error", f"invalid JSON body: {exc}") from None


class ApiServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, bind: tuple[str, int], holder: CatalogHolder):
        super().__init__(bind, ApiHandler)
        self.holder = holder


def make_server(catalog_dir: str | None = None, host: str = "127.0.0.1", port: int = 0) -> ApiServer:
    """Build (but do not start) a server; port 0 picks an ephemeral port."""
    return ApiServer((host, port), CatalogHolder(catalog_dir))


def start_background(catalog_dir: str | None = None, host: str = "127.0.0.1") -> tuple[ApiServer, str]:
    """Start a daemon-thread server on an ephemeral port; returns (server, url)."""
    server = make_server(catalog_dir, host, 0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, f"http://{server.server_address[0]}:{server.server_address[1]}"


def serve(catalog_dir: str | None, bind_address: str) -> None:
    """Run until terminated. SIGHUP reloads the catalog snapshot atomically."""
    host, _, port_text = bind_address.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValidationError(f"--bind must be HOST:PORT, got {bind_address!r}")
    server = make_server(catalog_dir, host, int(port_text))

    def _reload(signum, frame):
        # a bad catalog must not take the server down; keep the old snapshot
        error = server.holder.reload_or_keep()
        if error is None:
            print("catalog reloaded", flush=True)
        else:
            print(f"catalog reload failed, keeping current snapshot: {error}", flush=True)

    if hasattr(signal, "SIGHUP") and threading.current_thread() is threading.main_thread():
        signal.signal(signal.SIGHUP, _reload)
    host_shown, port_shown = server.server_address[0], server.server_address[1]
    print(f"carbonledger service listening on http://{host_shown}:{port_shown}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
