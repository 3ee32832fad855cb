/** Segment history panel: observed monthly condition as a line, with the
 * model's forecast for the next month overlaid as a marked point. */

import type { SegmentHistoryResponse } from "../api/types.js";
import { el, svgEl } from "../dom.js";
import { conditionColor } from "../render/color.js";

const WIDTH = 640;
const HEIGHT = 280;
const PAD = 36;

function x(month: number, lastMonth: number): number {
  const span = Math.max(lastMonth + 1, 1);
  return PAD + ((WIDTH - 2 * PAD) * month) / span;
}

function y(condition: number): number {
  return HEIGHT - PAD - ((HEIGHT - 2 * PAD) * condition) / 100;
}

export function renderHistory(data: SegmentHistoryResponse): HTMLElement {
  const lastMonth = data.history.length > 0
    ? data.history[data.history.length - 1]!.month
    : 0;

  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
    class: "history-chart",
  });

  for (const grid of [0, 25, 50, 75, 100]) {
    svg.append(
      svgEl("line", {
        x1: String(PAD),
        y1: y(grid).toFixed(1),
        x2: String(WIDTH - PAD),
        y2: y(grid).toFixed(1),
        stroke: "#eee",
      }),
      svgEl("text", {
        x: "4",
        y: (y(grid) + 4).toFixed(1),
        class: "axis-label",
      }, [document.createTextNode(String(grid))]),
    );
  }

  const path = data.history
    .map((point, i) =>
      `${i === 0 ? "M" : "L"}${x(point.month, lastMonth).toFixed(1)},` +
      `${y(point.distress_level).toFixed(1)}`)
    .join(" ");
  svg.append(
    svgEl("path", { d: path, fill: "none", stroke: "#336", "stroke-width": "2" }),
  );
  for (const point of data.history) {
    svg.append(
      svgEl("circle", {
        cx: x(point.month, lastMonth).toFixed(1),
        cy: y(point.distress_level).toFixed(1),
        r: "3",
        fill: "#336",
        class: "observed-point",
      }),
    );
  }

  // Forecast overlay: the model's one-step-ahead condition estimate.
  const last = data.history[data.history.length - 1];
  if (last) {
    svg.append(
      svgEl("line", {
        x1: x(last.month, lastMonth).toFixed(1),
        y1: y(last.distress_level).toFixed(1),
        x2: x(lastMonth + 1, lastMonth).toFixed(1),
        y2: y(data.prediction).toFixed(1),
        stroke: conditionColor(data.prediction),
        "stroke-width": "2",
        "stroke-dasharray": "5 3",
      }),
      svgEl("circle", {
        cx: x(lastMonth + 1, lastMonth).toFixed(1),
        cy: y(data.prediction).toFixed(1),
        r: "5",
        fill: conditionColor(data.prediction),
        class: "forecast-point",
      }),
    );
  }

  return el("div", { class: "history-view" }, [
    el("h2", {}, [`Segment ${data.segment_id}`]),
    el("p", { class: "forecast-readout" }, [
      `model forecast: ${data.prediction.toFixed(2)}`,
    ]),
    svg,
  ]);
}
