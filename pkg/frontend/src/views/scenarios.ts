/** Scenario comparison: per-fork mean-condition trajectories drawn on one
 * chart plus a summary table (end state, segments below threshold, cost).
 * All numbers come straight from the compare endpoint. */

import type { CompareResponse } from "../api/types.js";
import { el, svgEl } from "../dom.js";

const WIDTH = 640;
const HEIGHT = 280;
const PAD = 36;

const SERIES_COLORS = ["#336", "#a33", "#383", "#a80", "#639"];

export function renderComparison(data: CompareResponse): HTMLElement {
  const entries = Object.entries(data.comparison);
  const maxMonth = Math.max(
    1,
    ...entries.map(([, summary]) => summary.months[summary.months.length - 1] ?? 0),
  );

  const x = (month: number) => PAD + ((WIDTH - 2 * PAD) * month) / maxMonth;
  const y = (condition: number) =>
    HEIGHT - PAD - ((HEIGHT - 2 * PAD) * Math.max(0, Math.min(100, condition))) / 100;

  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
    class: "compare-chart",
  });
  entries.forEach(([id, summary], i) => {
    const color = SERIES_COLORS[i % SERIES_COLORS.length]!;
    const path = summary.months
      .map((month, j) =>
        `${j === 0 ? "M" : "L"}${x(month).toFixed(1)},` +
        `${y(summary.mean_condition[j] ?? 0).toFixed(1)}`)
      .join(" ");
    svg.append(
      svgEl("path", {
        d: path,
        fill: "none",
        stroke: color,
        "stroke-width": "2",
        "data-scenario-id": id,
      }),
    );
  });

  const header = el("tr", {}, [
    el("th", {}, ["scenario"]),
    el("th", {}, ["end mean condition"]),
    el("th", {}, ["below threshold"]),
    el("th", {}, ["total cost"]),
  ]);
  const body = entries.map(([id, summary], i) =>
    el("tr", { "data-scenario-id": id }, [
      el("td", { style: `color: ${SERIES_COLORS[i % SERIES_COLORS.length]}` }, [id]),
      el("td", {}, [
        (summary.mean_condition[summary.mean_condition.length - 1] ?? 0).toFixed(1),
      ]),
      el("td", {}, [
        String(summary.below_threshold[summary.below_threshold.length - 1] ?? 0),
      ]),
      el("td", {}, [summary.total_cost.toFixed(0)]),
    ]),
  );

  return el("div", { class: "scenarios-view" }, [
    svg,
    el("table", { class: "compare-table" }, [header, ...body]),
  ]);
}
