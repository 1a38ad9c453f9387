/** The 4M scenario builder: one fieldset per lever, live results, and a
 * pinned baseline for ratio comparison. Pure render functions; main.ts
 * owns the event wiring. */

import type { ApiError, CatalogData, CompareReport, EstimateResponse } from "../api.js";
import { escapeHtml, formatSig6, formatTons } from "../format.js";
import type { ScenarioDraft } from "../state.js";

function options(entries: { id: string; label: string }[], selected: string): string {
  return entries
    .map(
      (entry) =>
        `<option value="${escapeHtml(entry.id)}" ${entry.id === selected ? "selected" : ""}>
          ${escapeHtml(entry.label)}</option>`,
    )
    .join("");
}

export function renderScenarioForm(catalog: CatalogData, draft: ScenarioDraft): string {
  const hardware = catalog.hardware.map((h) => ({
    id: h.id,
    label: `${h.name} (${formatSig6(h.avg_system_power_watts)} W)`,
  }));
  const datacenters = catalog.datacenters.map((d) => ({
    id: d.id,
    label: `${d.name} (PUE ${formatSig6(d.pue)})`,
  }));
  const regions = catalog.regions.map((r) => ({
    id: r.region_id,
    label: `${r.name} (${formatSig6(r.annual_avg_intensity)} tCO2e/MWh)`,
  }));
  const hourly = draft.method === "hourly";

  return `
  <form id="scenario-form" class="four-m">
    <fieldset data-dimension="model">
      <legend>Model</legend>
      <label>run label
        <input name="label" type="text" value="${escapeHtml(draft.label)}"></label>
      <label>processors
        <input name="processor_count" type="number" min="1" step="1" value="${draft.processor_count}"></label>
      <label>hours to train
        <input name="duration_hours" type="number" min="0.001" step="any" value="${draft.duration_hours}"></label>
    </fieldset>
    <fieldset data-dimension="machine">
      <legend>Machine</legend>
      <label>processor
        <select name="hardware_id">${options(hardware, draft.hardware_id)}</select></label>
    </fieldset>
    <fieldset data-dimension="mechanization">
      <legend>Mechanization</legend>
      <label>datacenter
        <select name="datacenter_id">${options(datacenters, draft.datacenter_id)}</select></label>
    </fieldset>
    <fieldset data-dimension="map">
      <legend>Map</legend>
      <label>region
        <select name="region_id">${options(regions, draft.region_id)}</select></label>
      <label>accounting
        <select name="method">
          <option value="flat" ${hourly ? "" : "selected"}>flat (annual average)</option>
          <option value="hourly" ${hourly ? "selected" : ""}>hourly (daily profile)</option>
        </select></label>
      <label class="${hourly ? "" : "hidden"}">start hour
        <input name="start_hour" type="number" min="0" max="23" step="1" value="${draft.start_hour}"></label>
    </fieldset>
  </form>
  <div class="actions">
    <button id="pin-baseline" type="button">pin as baseline</button>
    <button id="clear-baseline" type="button">clear baseline</button>
  </div>`;
}

export function renderEstimateResult(
  doc: EstimateResponse | null,
  error: ApiError | null,
): string {
  if (error) {
    return `<p class="inline-error" data-code="${escapeHtml(error.code)}" data-role="estimate-error">
      ${escapeHtml(error.code)}: ${escapeHtml(error.message)}</p>`;
  }
  if (!doc) return `<p class="muted">choose a scenario to see its footprint</p>`;
  const accYears =
    doc.workload.accelerator_years !== undefined
      ? `<div><dt>accelerator-years</dt><dd>${formatSig6(doc.workload.accelerator_years)}</dd></div>`
      : "";
  const startHour =
    doc.emissions.start_hour !== undefined
      ? `<div><dt>start hour</dt><dd>${doc.emissions.start_hour}:00</dd></div>`
      : "";
  return `<dl class="estimate" data-role="estimate">
    <div><dt>IT energy</dt><dd data-role="it-mwh">${formatSig6(doc.energy.it_mwh)} MWh</dd></div>
    <div><dt>total energy</dt><dd data-role="total-mwh">${formatSig6(doc.energy.total_mwh)} MWh</dd></div>
    <div><dt>PUE</dt><dd>${formatSig6(doc.energy.pue_used)}</dd></div>
    <div><dt>gross emissions</dt><dd data-role="gross">${formatTons(doc.emissions.gross_tco2e)}</dd></div>
    <div><dt>effective intensity</dt><dd>${formatSig6(doc.emissions.effective_intensity)} tCO2e/MWh (${escapeHtml(doc.emissions.method)})</dd></div>
    ${accYears}${startHour}
  </dl>`;
}

export function renderCompareResult(doc: CompareReport | null, pinned: boolean): string {
  if (!pinned) {
    return `<p class="muted">pin a baseline to compare against it live</p>`;
  }
  if (!doc) return `<p class="muted">comparing&hellip;</p>`;
  return `<dl class="ratios" data-role="ratios">
    <div><dt>energy</dt><dd data-role="energy-ratio">${formatSig6(doc.energy_ratio)}x</dd></div>
    <div><dt>compute</dt><dd data-role="compute-ratio">${formatSig6(doc.compute_ratio)}x</dd></div>
    <div><dt>intensity</dt><dd data-role="intensity-ratio">${formatSig6(doc.intensity_ratio)}x</dd></div>
    <div><dt>emissions</dt><dd data-role="emissions-ratio">${formatSig6(doc.emissions_ratio)}x</dd></div>
  </dl>
  <p class="muted">baseline ${escapeHtml(doc.baseline_label)} / candidate ${escapeHtml(doc.candidate_label)};
    above 1x means the candidate is better</p>`;
}
