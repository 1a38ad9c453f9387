/** UI state lives in the URL query string so any scenario is a shareable
 * link. Decoding is forgiving: missing or malformed params fall back to
 * defaults instead of breaking the page. */

export interface ScenarioDraft {
  label: string;
  processor_count: number;
  duration_hours: number;
  hardware_id: string;
  datacenter_id: string;
  region_id: string;
  method: "flat" | "hourly";
  start_hour: number;
}

export type ViewName = "scenario" | "waterfall" | "placement";

export interface UiState {
  view: ViewName;
  draft: ScenarioDraft;
  baseline: ScenarioDraft | null;
  waterfallPreset: string;
  placementDuration: number;
  placementObjective: "min_intensity" | "max_cfe";
}

export const DEFAULT_DRAFT: ScenarioDraft = {
  label: "my training run",
  processor_count: 512,
  duration_hours: 168,
  hardware_id: "v100",
  datacenter_id: "cloud",
  region_id: "avg2020",
  method: "flat",
  start_hour: 0,
};

export const DEFAULT_STATE: UiState = {
  view: "scenario",
  draft: DEFAULT_DRAFT,
  baseline: null,
  waterfallPreset: "figure1-2021",
  placementDuration: 10,
  placementObjective: "max_cfe",
};

function positiveNumber(text: string | null, fallback: number): number {
  if (text === null) return fallback;
  const value = Number(text);
  return Number.isFinite(value) && value > 0 ? value : fallback;
}

function positiveInt(text: string | null, fallback: number): number {
  const value = positiveNumber(text, fallback);
  return Number.isInteger(value) ? value : fallback;
}

function hour(text: string | null, fallback: number): number {
  if (text === null) return fallback;
  const value = Number(text);
  return Number.isInteger(value) && value >= 0 && value <= 23 ? value : fallback;
}

function draftFromParams(params: URLSearchParams, prefix: string): ScenarioDraft | null {
  if (!params.has(`${prefix}hw`)) return null;
  return {
    label: params.get(`${prefix}label`) ?? DEFAULT_DRAFT.label,
    processor_count: positiveInt(params.get(`${prefix}procs`), DEFAULT_DRAFT.processor_count),
    duration_hours: positiveNumber(params.get(`${prefix}hours`), DEFAULT_DRAFT.duration_hours),
    hardware_id: params.get(`${prefix}hw`) ?? DEFAULT_DRAFT.hardware_id,
    datacenter_id: params.get(`${prefix}dc`) ?? DEFAULT_DRAFT.datacenter_id,
    region_id: params.get(`${prefix}region`) ?? DEFAULT_DRAFT.region_id,
    method: params.get(`${prefix}method`) === "hourly" ? "hourly" : "flat",
    start_hour: hour(params.get(`${prefix}start`), DEFAULT_DRAFT.start_hour),
  };
}

function draftToParams(params: URLSearchParams, prefix: string, draft: ScenarioDraft): void {
  params.set(`${prefix}label`, draft.label);
  params.set(`${prefix}procs`, String(draft.processor_count));
  params.set(`${prefix}hours`, String(draft.duration_hours));
  params.set(`${prefix}hw`, draft.hardware_id);
  params.set(`${prefix}dc`, draft.datacenter_id);
  params.set(`${prefix}region`, draft.region_id);
  params.set(`${prefix}method`, draft.method);
  params.set(`${prefix}start`, String(draft.start_hour));
}

export function decodeState(query: string): UiState {
  const params = new URLSearchParams(query);
  const viewParam = params.get("view");
  const view: ViewName =
    viewParam === "waterfall" || viewParam === "placement" ? viewParam : "scenario";
  return {
    view,
    draft: draftFromParams(params, "") ?? { ...DEFAULT_DRAFT },
    baseline: draftFromParams(params, "b_"),
    waterfallPreset: params.get("preset") ?? DEFAULT_STATE.waterfallPreset,
    placementDuration: positiveNumber(params.get("pdur"), DEFAULT_STATE.placementDuration),
    placementObjective:
      params.get("pobj") === "min_intensity" ? "min_intensity" : "max_cfe",
  };
}

export function encodeState(state: UiState): string {
  const params = new URLSearchParams();
  params.set("view", state.view);
  draftToParams(params, "", state.draft);
  if (state.baseline) draftToParams(params, "b_", state.baseline);
  params.set("preset", state.waterfallPreset);
  params.set("pdur", String(state.placementDuration));
  params.set("pobj", state.placementObjective);
  return params.toString();
}

/** A draft is submittable once every catalog reference is chosen. */
export function draftComplete(draft: ScenarioDraft): boolean {
  return Boolean(draft.hardware_id && draft.datacenter_id && draft.region_id);
}

export function draftToScenario(draft: ScenarioDraft, label?: string): unknown {
  return {
    label: label ?? draft.label,
    workload: {
      label: draft.label,
      processor_count: draft.processor_count,
      duration_hours: draft.duration_hours,
      hardware_id: draft.hardware_id,
    },
    datacenter_id: draft.datacenter_id,
    region_id: draft.region_id,
    emissions_method: draft.method,
    ...(draft.method === "hourly" ? { start_hour: draft.start_hour } : {}),
  };
}

export function draftToEstimateBody(draft: ScenarioDraft): unknown {
  return {
    workload: {
      label: draft.label,
      processor_count: draft.processor_count,
      duration_hours: draft.duration_hours,
      hardware_id: draft.hardware_id,
    },
    datacenter_id: draft.datacenter_id,
    region_id: draft.region_id,
    method: draft.method,
    ...(draft.method === "hourly" ? { start_hour: draft.start_hour } : {}),
  };
}
