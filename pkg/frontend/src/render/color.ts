/** Condition color scale: 0 (failed) = red through yellow to 100 (new) =
 * green, linear in hue. Presentation only — the underlying numbers always
 * come from the API. */

export function conditionColor(condition: number): string {
  const clamped = Math.max(0, Math.min(100, condition));
  const hue = (clamped / 100) * 120; // 0 = red, 120 = green
  return `hsl(${Math.round(hue)}, 75%, 45%)`;
}

/** Text label buckets used next to the color swatches. */
export function conditionLabel(condition: number): string {
  if (condition >= 80) return "good";
  if (condition >= 60) return "fair";
  if (condition >= 40) return "poor";
  return "critical";
}
