/** Region cards with 24-hour sparklines; the placement winner gets its
 * start window shaded, starting at the hour the service chose. */

import type { PlacementResult, RegionEntry } from "../api.js";
import { escapeHtml, formatSig6 } from "../format.js";

const SPARK_WIDTH = 312;
const SPARK_HEIGHT = 64;
const CELL = SPARK_WIDTH / 24;

export type Objective = "min_intensity" | "max_cfe";

export function regionSupports(region: RegionEntry, objective: Objective): boolean {
  if (!region.hourly || region.hourly.length !== 24) return false;
  if (objective === "min_intensity") {
    return region.hourly.every((p) => p.intensity !== null && p.intensity !== undefined);
  }
  return true;
}

function windowHours(start: number, durationHours: number): Set<number> {
  const hours = new Set<number>();
  const span = Math.min(24, Math.ceil(durationHours));
  for (let step = 0; step < span; step += 1) {
    hours.add((start + step) % 24);
  }
  return hours;
}

function sparkline(
  region: RegionEntry,
  objective: Objective,
  highlight: Set<number>,
  startHour: number | null,
): string {
  const points = region.hourly ?? [];
  const values = points.map((p) =>
    objective === "min_intensity" ? (p.intensity ?? 0) : p.cfe_percent,
  );
  const top = Math.max(...values, 1e-12);
  const bars = points
    .map((point, index) => {
      const value = values[index];
      const height = (value / top) * (SPARK_HEIGHT - 6);
      const classes = ["spark-hour"];
      if (highlight.has(point.hour)) classes.push("in-window");
      if (startHour === point.hour) classes.push("start-hour");
      return `<rect class="${classes.join(" ")}" data-hour="${point.hour}"
        x="${index * CELL + 1}" y="${SPARK_HEIGHT - height}"
        width="${CELL - 2}" height="${Math.max(height, 1.5)}">
        <title>hour ${point.hour}: ${formatSig6(value)}</title>
      </rect>`;
    })
    .join("");
  return `<svg viewBox="0 0 ${SPARK_WIDTH} ${SPARK_HEIGHT}" class="sparkline">${bars}</svg>`;
}

export function renderPlacement(
  regions: RegionEntry[],
  result: PlacementResult | null,
  durationHours: number,
  objective: Objective,
  globalError: string | null = null,
): string {
  const ranking = new Map(
    (result?.ranking ?? []).map((choice, index) => [choice.region_id, { choice, index }]),
  );
  const chosenId = result?.chosen.region_id ?? null;

  const cards = regions
    .map((region) => {
      const supported = regionSupports(region, objective);
      const entry = ranking.get(region.region_id);
      const isChosen = region.region_id === chosenId;
      const highlight =
        isChosen && entry ? windowHours(entry.choice.best_start_hour, durationHours) : new Set<number>();
      const startHour = isChosen && entry ? entry.choice.best_start_hour : null;
      const classes = ["region-card"];
      if (isChosen) classes.push("chosen");
      if (!supported) classes.push("unsupported");

      let status: string;
      if (!supported) {
        status = `<span class="inline-error" data-code="missing_hourly_data">
          no hourly ${objective === "min_intensity" ? "intensity" : "CFE"} data</span>`;
      } else if (entry) {
        const value = formatSig6(entry.choice.objective_value);
        const label = objective === "min_intensity" ? "tCO2e/MWh" : "% CFE";
        const gross =
          entry.choice.gross_tco2e !== undefined
            ? ` &middot; ${formatSig6(entry.choice.gross_tco2e)} tCO2e`
            : "";
        status = `#${entry.index + 1} &middot; best start <strong data-role="best-start">${entry.choice.best_start_hour}:00</strong>
          &middot; ${value} ${label}${gross}`;
      } else {
        status = "&mdash;";
      }

      return `<div data-region="${escapeHtml(region.region_id)}" class="${classes.join(" ")}">
        <h4>${escapeHtml(region.name)} <code>${escapeHtml(region.region_id)}</code></h4>
        ${region.hourly ? sparkline(region, objective, highlight, startHour) : '<p class="muted">no daily profile</p>'}
        <p class="region-status">${status}</p>
      </div>`;
    })
    .join("\n");

  const banner = globalError
    ? `<p class="inline-error" data-role="placement-error">${escapeHtml(globalError)}</p>`
    : "";
  const summary =
    result && chosenId
      ? `<p class="placement-summary" data-role="placement-summary">
          run in <strong>${escapeHtml(chosenId)}</strong> starting at
          <strong>${result.chosen.best_start_hour}:00</strong>
          (${formatSig6(result.chosen.objective_value)}
          ${objective === "min_intensity" ? "tCO2e/MWh over the run" : "% CFE average"})
        </p>`
      : `<p class="placement-summary muted">no candidate region has the data this objective needs</p>`;

  return `${banner}${summary}<div class="region-grid">${cards}</div>`;
}
