/** Dashboard wiring: tab navigation synced to the URL hash, a ~2s poll
 * of the active view, twin stepping, and the scenario builder. */

import { ApiClient, ConflictError } from "./api/client.js";
import { clear, el } from "./dom.js";
import { Poller } from "./poll.js";
import { ToastHost } from "./toast.js";
import { decodeState, encodeState, type ViewName, type ViewState } from "./state/url.js";
import { renderAlerts } from "./views/alerts.js";
import { renderHistory } from "./views/history.js";
import { renderNetwork } from "./views/network.js";
import { renderReport } from "./views/report.js";
import { renderComparison } from "./views/scenarios.js";

const TABS: { view: ViewName; label: string }[] = [
  { view: "network", label: "Network" },
  { view: "history", label: "Segment" },
  { view: "scenarios", label: "Scenarios" },
  { view: "alerts", label: "Alerts" },
  { view: "report", label: "Models" },
];

export function startApp(root: HTMLElement, client = new ApiClient()): Poller {
  let state: ViewState = decodeState(window.location.hash);
  const toasts = new ToastHost();
  const content = el("div", { class: "content" });
  const status = el("span", { class: "twin-status" });

  function setState(next: Partial<ViewState>): void {
    state = { ...state, ...next };
    window.location.hash = encodeState(state);
    void refresh();
  }

  window.addEventListener("hashchange", () => {
    state = decodeState(window.location.hash);
    void refresh();
  });

  const nav = el(
    "nav",
    { class: "tabs" },
    TABS.map(({ view, label }) => {
      const button = el("button", { class: "tab", "data-view": view }, [label]);
      button.addEventListener("click", () => setState({ view }));
      return button;
    }),
  );

  const stepButton = el("button", { class: "step-button" }, ["Advance 1 month"]);
  stepButton.addEventListener("click", () => void doStep());
  async function doStep(): Promise<void> {
    try {
      const res = await client.step(1);
      toasts.show(`Advanced to month ${res.month} (${res.alerts.length} new alerts)`);
      await refresh();
    } catch (err) {
      if (err instanceof ConflictError) {
        toasts.showRetry("Twin is busy with another update.", () => void doStep());
      } else {
        toasts.show(`Step failed: ${(err as Error).message}`);
      }
    }
  }

  const scenarioControls = el("div", { class: "scenario-controls" });
  const newScenarioButton = el("button", {}, ["New scenario"]);
  newScenarioButton.addEventListener("click", () => void createScenario());
  async function createScenario(): Promise<void> {
    const created = await client.createScenario();
    setState({ scenarios: [...state.scenarios, created.id], view: "scenarios" });
    toasts.show(`Forked ${created.id} at month ${created.base_month}`);
  }
  scenarioControls.append(newScenarioButton);

  async function refresh(): Promise<void> {
    for (const button of nav.querySelectorAll(".tab")) {
      button.classList.toggle("active", button.getAttribute("data-view") === state.view);
    }
    const health = await client.health();
    status.textContent =
      `month ${health.twin_month} · v${health.twin_version} · ` +
      `data ${health.dataset_fingerprint}`;

    const next = await renderView();
    clear(content);
    content.append(next);
  }

  async function renderView(): Promise<HTMLElement> {
    switch (state.view) {
      case "network": {
        const data = await client.network();
        return renderNetwork(data, {
          onSelect: (segmentId) => setState({ view: "history", segment: segmentId }),
        });
      }
      case "history": {
        if (state.segment === null) {
          return el("p", { class: "empty" }, ["Pick a segment on the network map."]);
        }
        return renderHistory(await client.segmentHistory(state.segment));
      }
      case "scenarios": {
        const panel = el("div", {}, [scenarioControls]);
        if (state.scenarios.length >= 2) {
          panel.append(renderComparison(await client.compare(state.scenarios)));
        } else {
          panel.append(
            el("p", { class: "empty" }, [
              `Create at least two scenarios to compare (have ${state.scenarios.length}).`,
            ]),
          );
        }
        return panel;
      }
      case "alerts":
        return renderAlerts(await client.alerts());
      case "report":
        return renderReport(await client.report());
    }
  }

  root.append(
    el("header", {}, [el("h1", {}, ["pavetwin"]), status, stepButton]),
    nav,
    content,
    toasts.root,
  );

  const poller = new Poller(refresh, 2000);
  poller.start();
  return poller;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  startApp(document.getElementById("app")!);
}
