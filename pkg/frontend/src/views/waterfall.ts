/** Log-scale stepped bar chart of cumulative emissions reduction.
 *
 * Every printed number comes straight from the report; the only client-side
 * arithmetic is log positioning of the bars. */

import type { WaterfallReport } from "../api.js";
import { escapeHtml, formatSig6 } from "../format.js";

const WIDTH = 680;
const HEIGHT = 300;
const MARGIN = { top: 34, right: 16, bottom: 52, left: 16 };

export function renderWaterfall(report: WaterfallReport | null): string {
  if (report === null || report.steps.length === 0) {
    return `<div class="chart-disabled" data-role="waterfall-empty">
      Pick a preset or add at least one reduction step to draw the waterfall.
    </div>`;
  }
  const plotWidth = WIDTH - MARGIN.left - MARGIN.right;
  const plotHeight = HEIGHT - MARGIN.top - MARGIN.bottom;
  const values = report.steps.map((s) => s.cumulative_emissions_reduction);
  const maxLog = Math.max(...values.map((v) => Math.log10(v)), 0);
  const slot = plotWidth / report.steps.length;
  const barWidth = Math.min(90, slot * 0.6);

  const bars = report.steps
    .map((step, index) => {
      const logValue = Math.max(Math.log10(step.cumulative_emissions_reduction), 0);
      const height = maxLog > 0 ? (logValue / maxLog) * plotHeight : 0;
      const x = MARGIN.left + slot * index + (slot - barWidth) / 2;
      const y = MARGIN.top + plotHeight - height;
      const value = formatSig6(step.cumulative_emissions_reduction);
      const isFinal = index === report.steps.length - 1;
      const annotation = isFinal
        ? `<text class="final-annotation" data-role="final-annotation" x="${x + barWidth / 2}"
             y="${y - 18}" text-anchor="middle">&#8776;${value}x</text>`
        : "";
      return `
        <g class="bar ${escapeHtml(step.dimension)}" data-dimension="${escapeHtml(step.dimension)}">
          <rect x="${x}" y="${y}" width="${barWidth}" height="${Math.max(height, 2)}"></rect>
          <text class="bar-value" x="${x + barWidth / 2}" y="${y - 5}" text-anchor="middle">${value}x</text>
          <text class="bar-dim" x="${x + barWidth / 2}" y="${MARGIN.top + plotHeight + 16}" text-anchor="middle">${escapeHtml(step.dimension)}</text>
          <text class="bar-desc" x="${x + barWidth / 2}" y="${MARGIN.top + plotHeight + 32}" text-anchor="middle">${escapeHtml(step.description)}</text>
          ${annotation}
        </g>`;
    })
    .join("\n");

  const totals = `
    <p class="totals" data-role="waterfall-totals">
      <span>baseline: ${escapeHtml(report.baseline_label)}</span>
      <span>energy reduction <strong data-role="total-energy">${formatSig6(report.total_energy_reduction)}x</strong></span>
      <span>emissions reduction <strong data-role="total-emissions">${formatSig6(report.total_emissions_reduction)}x</strong></span>
    </p>`;

  return `${totals}
    <svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="waterfall-chart" role="img"
         aria-label="cumulative emissions reduction, log scale">
      <line x1="${MARGIN.left}" y1="${MARGIN.top + plotHeight}" x2="${WIDTH - MARGIN.right}"
            y2="${MARGIN.top + plotHeight}" class="axis"></line>
      <text x="${MARGIN.left}" y="${MARGIN.top - 18}" class="axis-label">cumulative reduction (log scale)</text>
      ${bars}
    </svg>`;
}
