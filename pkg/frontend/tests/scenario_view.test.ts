import { describe, expect, it } from "vitest";

import compareIdentity from "./fixtures/compare_identity.json";
import compareMap from "./fixtures/compare_map.json";
import estimateReference from "./fixtures/estimate_reference.json";
import catalogRegions from "./fixtures/catalog_regions.json";
import type { CatalogData, CompareReport, EstimateResponse, RegionEntry } from "../src/api.js";
import { formatSig6 } from "../src/format.js";
import { DEFAULT_DRAFT } from "../src/state.js";
import {
  renderCompareResult,
  renderEstimateResult,
  renderScenarioForm,
} from "../src/views/scenario.js";

const catalog: CatalogData = {
  hardware: [
    { id: "v100", name: "NVIDIA V100", year: 2017, kind: "gpu", avg_system_power_watts: 330, notes: "" },
  ],
  datacenters: [{ id: "cloud", name: "Cloud", region_id: "avg2020", pue: 1.1 }],
  regions: catalogRegions as RegionEntry[],
};

describe("estimate panel", () => {
  it("shows the API's numbers verbatim", () => {
    const doc = estimateReference as EstimateResponse;
    const html = renderEstimateResult(doc, null);
    expect(html).toContain(`${formatSig6(doc.energy.it_mwh)} MWh`);
    expect(html).toContain(`${formatSig6(doc.energy.total_mwh)} MWh`);
    expect(html).toContain("72 MWh");
    expect(html).toContain("79.2 MWh");
  });

  it("renders service errors inline by code", () => {
    const html = renderEstimateResult(null, {
      code: "reference_error",
      message: "unknown region 'atlantis'",
    });
    expect(html).toContain('data-code="reference_error"');
    expect(html).toContain("atlantis");
  });
});

describe("comparison panel", () => {
  it("identical scenarios show 1x everywhere", () => {
    const html = renderCompareResult(compareIdentity as CompareReport, true);
    expect(html).toContain('data-role="emissions-ratio">1x');
    expect(html).toContain('data-role="energy-ratio">1x');
  });

  it("moving the reference run to a cleaner grid shows the intensity ratio", () => {
    const doc = compareMap as CompareReport;
    const html = renderCompareResult(doc, true);
    expect(formatSig6(doc.emissions_ratio)).toBe("4.875");
    expect(html).toContain('data-role="emissions-ratio">4.875x');
    expect(html).toContain('data-role="energy-ratio">1x');
  });

  it("prompts until a baseline is pinned", () => {
    expect(renderCompareResult(null, false)).toContain("pin a baseline");
  });
});

describe("scenario form", () => {
  it("groups the four levers and selects the draft values", () => {
    const html = renderScenarioForm(catalog, { ...DEFAULT_DRAFT, hardware_id: "v100" });
    for (const dimension of ["model", "machine", "mechanization", "map"]) {
      expect(html).toContain(`data-dimension="${dimension}"`);
    }
    expect(html).toContain('value="v100" selected');
    expect(html).toContain('value="cloud" selected');
  });
});
