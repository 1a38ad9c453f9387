/** Typed client for the carbonledger HTTP service, plus the latest-wins
 * request sequencing used by every live view: each input change issues a
 * new sequence number, and responses for superseded numbers are dropped. */

export interface ApiError {
  code: string;
  message: string;
  detail?: unknown;
}

export class ServiceError extends Error {
  constructor(
    public status: number,
    public api: ApiError,
  ) {
    super(api.message);
  }
}

export interface HardwareEntry {
  id: string;
  name: string;
  year: number;
  kind: string;
  avg_system_power_watts: number;
  notes: string;
}

export interface DatacenterEntry {
  id: string;
  name: string;
  region_id: string;
  pue: number;
}

export interface HourlyPoint {
  hour: number;
  cfe_percent: number;
  intensity: number | null;
}

export interface RegionEntry {
  region_id: string;
  name: string;
  annual_avg_intensity: number;
  hourly?: HourlyPoint[];
}

export interface CatalogData {
  hardware: HardwareEntry[];
  datacenters: DatacenterEntry[];
  regions: RegionEntry[];
}

export interface WorkloadDoc {
  label: string;
  processor_count: number;
  duration_hours: number;
  hardware_id: string;
  accelerator_years?: number;
}

export interface EstimateResponse {
  workload: WorkloadDoc;
  energy: { it_mwh: number; total_mwh: number; pue_used: number };
  emissions: {
    gross_tco2e: number;
    total_mwh: number;
    effective_intensity: number;
    method: string;
    start_hour?: number;
  };
}

export interface WaterfallStepEntry {
  dimension: string;
  description: string;
  energy_factor: number;
  emissions_only_factor: number;
  cumulative_energy_reduction: number;
  cumulative_emissions_reduction: number;
}

export interface WaterfallReport {
  baseline_label: string;
  steps: WaterfallStepEntry[];
  total_energy_reduction: number;
  total_emissions_reduction: number;
}

export interface CompareReport {
  baseline_label: string;
  candidate_label: string;
  energy_ratio: number;
  compute_ratio: number;
  intensity_ratio: number;
  emissions_ratio: number;
}

export interface RegionChoice {
  region_id: string;
  best_start_hour: number;
  objective_value: number;
  gross_tco2e?: number;
}

export interface PlacementResult {
  objective: string;
  ranking: RegionChoice[];
  chosen: RegionChoice;
}

export class Client {
  constructor(public baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const api: ApiError =
        body && typeof body === "object" && "code" in body
          ? (body as ApiError)
          : { code: "internal", message: `HTTP ${response.status}` };
      throw new ServiceError(response.status, api);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async catalog(): Promise<CatalogData> {
    const [hardware, datacenters, regions] = await Promise.all([
      this.request<HardwareEntry[]>("/v1/catalog/hardware"),
      this.request<DatacenterEntry[]>("/v1/catalog/datacenters"),
      this.request<RegionEntry[]>("/v1/catalog/regions"),
    ]);
    return { hardware, datacenters, regions };
  }

  estimate(payload: unknown): Promise<EstimateResponse> {
    return this.post("/v1/estimate", payload);
  }

  waterfall(payload: unknown): Promise<WaterfallReport> {
    return this.post("/v1/waterfall", payload);
  }

  compare(payload: unknown): Promise<CompareReport> {
    return this.post("/v1/compare", payload);
  }

  place(payload: unknown): Promise<PlacementResult> {
    return this.post("/v1/place", payload);
  }
}

/** Monotone sequence tokens; only the most recently issued token renders. */
export class LatestWins {
  private current = 0;

  issue(): number {
    this.current += 1;
    return this.current;
  }

  isCurrent(token: number): boolean {
    return token === this.current;
  }
}
