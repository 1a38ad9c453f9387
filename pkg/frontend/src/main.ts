/** Single-page wiring: tabs, URL state, latest-wins fetches, rendering. */

import { Client, LatestWins, ServiceError } from "./api.js";
import type { CatalogData, PlacementResult } from "./api.js";
import {
  decodeState,
  draftComplete,
  draftToEstimateBody,
  draftToScenario,
  encodeState,
} from "./state.js";
import type { ScenarioDraft, UiState, ViewName } from "./state.js";
import { renderCompareResult, renderEstimateResult, renderScenarioForm } from "./views/scenario.js";
import { renderWaterfall } from "./views/waterfall.js";
import { regionSupports, renderPlacement } from "./views/placement.js";

const WATERFALL_PRESETS = ["figure1-2021", "figure1-2021-quotedmap", "figure1-2019"];

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return override ?? "http://127.0.0.1:8080";
}

const client = new Client(apiBase());
const estimateSeq = new LatestWins();
const compareSeq = new LatestWins();
const waterfallSeq = new LatestWins();
const placementSeq = new LatestWins();

let state: UiState = decodeState(window.location.search);
let catalog: CatalogData | null = null;

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing element #${id}`);
  return element as T;
}

function pushUrl(): void {
  const query = encodeState(state);
  const url = `${window.location.pathname}?${query}`;
  window.history.replaceState(null, "", url);
}

function setState(patch: Partial<UiState>): void {
  state = { ...state, ...patch };
  pushUrl();
}

// ---------------------------------------------------------------- scenario

function readDraftFromForm(): ScenarioDraft {
  const form = byId<HTMLFormElement>("scenario-form");
  const data = new FormData(form);
  const get = (name: string) => String(data.get(name) ?? "");
  return {
    label: get("label"),
    processor_count: Math.max(1, Math.round(Number(get("processor_count")) || 1)),
    duration_hours: Number(get("duration_hours")) > 0 ? Number(get("duration_hours")) : 1,
    hardware_id: get("hardware_id"),
    datacenter_id: get("datacenter_id"),
    region_id: get("region_id"),
    method: get("method") === "hourly" ? "hourly" : "flat",
    start_hour: Math.min(23, Math.max(0, Math.round(Number(get("start_hour")) || 0))),
  };
}

async function refreshEstimate(): Promise<void> {
  const target = byId("estimate-result");
  if (!draftComplete(state.draft)) {
    target.innerHTML = renderEstimateResult(null, null);
    return;
  }
  const token = estimateSeq.issue();
  try {
    const doc = await client.estimate(draftToEstimateBody(state.draft));
    if (estimateSeq.isCurrent(token)) target.innerHTML = renderEstimateResult(doc, null);
  } catch (error) {
    if (!estimateSeq.isCurrent(token)) return;
    const api = error instanceof ServiceError ? error.api : { code: "network", message: String(error) };
    target.innerHTML = renderEstimateResult(null, api);
  }
}

async function refreshCompare(): Promise<void> {
  const target = byId("compare-result");
  if (!state.baseline) {
    target.innerHTML = renderCompareResult(null, false);
    return;
  }
  const token = compareSeq.issue();
  target.innerHTML = renderCompareResult(null, true);
  try {
    const doc = await client.compare({
      baseline: draftToScenario(state.baseline, "baseline"),
      candidate: draftToScenario(state.draft, "candidate"),
    });
    if (compareSeq.isCurrent(token)) target.innerHTML = renderCompareResult(doc, true);
  } catch (error) {
    if (!compareSeq.isCurrent(token)) return;
    const api = error instanceof ServiceError ? error.api : { code: "network", message: String(error) };
    target.innerHTML = renderEstimateResult(null, api);
  }
}

function mountScenarioView(): void {
  if (!catalog) return;
  byId("scenario-view").innerHTML = `
    <div class="builder">${renderScenarioForm(catalog, state.draft)}</div>
    <div class="results">
      <h3>this scenario</h3><div id="estimate-result"></div>
      <h3>vs pinned baseline</h3><div id="compare-result"></div>
    </div>`;
  byId<HTMLFormElement>("scenario-form").addEventListener("input", () => {
    setState({ draft: readDraftFromForm() });
    mountScenarioFormVisibility();
    void refreshEstimate();
    void refreshCompare();
  });
  byId("pin-baseline").addEventListener("click", () => {
    setState({ baseline: { ...state.draft } });
    void refreshCompare();
  });
  byId("clear-baseline").addEventListener("click", () => {
    setState({ baseline: null });
    void refreshCompare();
  });
  void refreshEstimate();
  void refreshCompare();
}

function mountScenarioFormVisibility(): void {
  const form = byId<HTMLFormElement>("scenario-form");
  const startLabel = form.querySelector<HTMLElement>('input[name="start_hour"]')?.parentElement;
  if (startLabel) startLabel.classList.toggle("hidden", state.draft.method !== "hourly");
}

// ---------------------------------------------------------------- waterfall

async function refreshWaterfall(): Promise<void> {
  const target = byId("waterfall-chart");
  const token = waterfallSeq.issue();
  try {
    const report = await client.waterfall({ preset: state.waterfallPreset });
    if (waterfallSeq.isCurrent(token)) target.innerHTML = renderWaterfall(report);
  } catch (error) {
    if (!waterfallSeq.isCurrent(token)) return;
    const message = error instanceof ServiceError ? `${error.api.code}: ${error.api.message}` : String(error);
    target.innerHTML = `<p class="inline-error">${message}</p>`;
  }
}

function mountWaterfallView(): void {
  const choices = WATERFALL_PRESETS.map(
    (name) =>
      `<label><input type="radio" name="preset" value="${name}"
        ${name === state.waterfallPreset ? "checked" : ""}> ${name}</label>`,
  ).join("");
  byId("waterfall-view").innerHTML = `
    <div class="preset-picker">${choices}</div>
    <div id="waterfall-chart"></div>`;
  document.querySelectorAll<HTMLInputElement>('input[name="preset"]').forEach((input) => {
    input.addEventListener("change", () => {
      setState({ waterfallPreset: input.value });
      void refreshWaterfall();
    });
  });
  void refreshWaterfall();
}

// ---------------------------------------------------------------- placement

async function refreshPlacement(): Promise<void> {
  if (!catalog) return;
  const target = byId("placement-regions");
  const objective = state.placementObjective;
  const regionsWithCurves = catalog.regions.filter((r) => r.hourly && r.hourly.length === 24);
  const usable = regionsWithCurves.filter((r) => regionSupports(r, objective));
  byId("placement-duration-label").textContent = `${state.placementDuration} h`;

  if (usable.length === 0) {
    target.innerHTML = renderPlacement(regionsWithCurves, null, state.placementDuration, objective);
    return;
  }
  const token = placementSeq.issue();
  let result: PlacementResult | null = null;
  let globalError: string | null = null;
  try {
    result = await client.place({
      workload: {
        label: "placement probe",
        processor_count: state.draft.processor_count,
        duration_hours: state.placementDuration,
        hardware_id: state.draft.hardware_id,
      },
      candidate_region_ids: usable.map((r) => r.region_id),
      datacenter_id: state.draft.datacenter_id,
      objective,
    });
  } catch (error) {
    globalError =
      error instanceof ServiceError ? `${error.api.code}: ${error.api.message}` : String(error);
  }
  if (!placementSeq.isCurrent(token)) return;
  target.innerHTML = renderPlacement(
    regionsWithCurves,
    result,
    state.placementDuration,
    objective,
    globalError,
  );
}

function mountPlacementView(): void {
  byId("placement-view").innerHTML = `
    <div class="placement-controls">
      <label>objective
        <select id="placement-objective">
          <option value="max_cfe" ${state.placementObjective === "max_cfe" ? "selected" : ""}>maximize %CFE</option>
          <option value="min_intensity" ${state.placementObjective === "min_intensity" ? "selected" : ""}>minimize intensity</option>
        </select></label>
      <label>duration
        <input id="placement-duration" type="range" min="1" max="48" step="1" value="${state.placementDuration}">
        <span id="placement-duration-label">${state.placementDuration} h</span></label>
    </div>
    <div id="placement-regions"></div>`;
  byId<HTMLSelectElement>("placement-objective").addEventListener("change", (event) => {
    const value = (event.target as HTMLSelectElement).value;
    setState({ placementObjective: value === "min_intensity" ? "min_intensity" : "max_cfe" });
    void refreshPlacement();
  });
  byId<HTMLInputElement>("placement-duration").addEventListener("input", (event) => {
    setState({ placementDuration: Number((event.target as HTMLInputElement).value) });
    void refreshPlacement();
  });
  void refreshPlacement();
}

// ---------------------------------------------------------------- shell

function showView(view: ViewName): void {
  setState({ view });
  for (const name of ["scenario", "waterfall", "placement"] as const) {
    byId(`${name}-view`).classList.toggle("hidden", name !== view);
    byId(`tab-${name}`).classList.toggle("active", name === view);
  }
  if (view === "scenario") mountScenarioView();
  if (view === "waterfall") mountWaterfallView();
  if (view === "placement") mountPlacementView();
}

async function boot(): Promise<void> {
  const status = byId("service-status");
  for (const name of ["scenario", "waterfall", "placement"] as const) {
    byId(`tab-${name}`).addEventListener("click", () => showView(name));
  }
  try {
    catalog = await client.catalog();
    status.textContent = `connected to ${client.baseUrl}`;
    status.classList.remove("inline-error");
  } catch (error) {
    status.textContent = `cannot reach the carbonledger service at ${client.baseUrl} (${String(error)}); start it with: carbonledger serve --bind 127.0.0.1:8080`;
    status.classList.add("inline-error");
    return;
  }
  pushUrl();
  showView(state.view);
}

void boot();
