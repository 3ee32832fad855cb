/** Alert feed. The API returns alerts newest-first; the view preserves
 * that order rather than re-sorting. */

import type { AlertsResponse } from "../api/types.js";
import { el } from "../dom.js";

const KIND_LABEL: Record<string, string> = {
  threshold_breach: "crossed threshold",
  rapid_drop: "rapid drop",
};

export function renderAlerts(data: AlertsResponse): HTMLElement {
  if (data.alerts.length === 0) {
    return el("div", { class: "alerts-view" }, [
      el("p", { class: "empty" }, ["No alerts."]),
    ]);
  }
  const rows = data.alerts.map((alert) =>
    el("li", { class: `alert alert-${alert.kind}` }, [
      el("span", { class: "alert-month" }, [`month ${alert.month}`]),
      el("span", { class: "alert-text" }, [
        ` segment ${alert.segment_id} ${KIND_LABEL[alert.kind] ?? alert.kind} ` +
          `(at ${alert.observed.toFixed(1)}, limit ${alert.threshold.toFixed(1)})`,
      ]),
    ]),
  );
  return el("div", { class: "alerts-view" }, [el("ul", { class: "alert-feed" }, rows)]);
}
