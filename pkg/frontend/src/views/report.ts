/** Model benchmark table from the report endpoint. */

import type { ReportResponse } from "../api/types.js";
import { el } from "../dom.js";

export function renderReport(data: ReportResponse): HTMLElement {
  const header = el("tr", {}, [
    el("th", {}, ["model"]),
    el("th", {}, ["MAE"]),
    el("th", {}, ["RMSE"]),
    el("th", {}, ["R²"]),
  ]);
  const rows = Object.entries(data.models).map(([name, scores]) =>
    el("tr", { "data-model": name }, [
      el("td", {}, [name]),
      el("td", {}, [scores.mae.toFixed(4)]),
      el("td", {}, [scores.rmse.toFixed(4)]),
      el("td", {}, [scores.r2.toFixed(4)]),
    ]),
  );
  return el("div", { class: "report-view" }, [
    el("table", { class: "report-table" }, [header, ...rows]),
  ]);
}
