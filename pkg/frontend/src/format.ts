/** Number formatting shared by every view: 6 significant digits, trailing
 * zeros trimmed, so displayed values string-compare against the API's
 * numbers formatted the same way. */

export function formatSig6(value: number): string {
  if (!Number.isFinite(value)) return String(value);
  if (value === 0) return "0";
  let text = value.toPrecision(6);
  if (text.includes("e")) {
    const [mantissa, exponent] = text.split("e");
    return trimZeros(mantissa) + "e" + exponent;
  }
  return trimZeros(text);
}

function trimZeros(text: string): string {
  if (!text.includes(".")) return text;
  return text.replace(/0+$/, "").replace(/\.$/, "");
}

/** Kilograms read better than fractional tons for small runs. */
export function formatTons(tco2e: number): string {
  if (tco2e !== 0 && Math.abs(tco2e) < 0.1) {
    return `${formatSig6(tco2e * 1000)} kg CO2e`;
  }
  return `${formatSig6(tco2e)} tCO2e`;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
