/** View state encoded in the URL hash so the dashboard is linkable:
 * `#view=network&segment=42&scenarios=scenario-1,scenario-2`. */

export type ViewName = "network" | "history" | "scenarios" | "alerts" | "report";

export interface ViewState {
  view: ViewName;
  segment: number | null;
  scenarios: string[];
}

export const DEFAULT_STATE: ViewState = {
  view: "network",
  segment: null,
  scenarios: [],
};

const VIEWS: ViewName[] = ["network", "history", "scenarios", "alerts", "report"];

export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  params.set("view", state.view);
  if (state.segment !== null) params.set("segment", String(state.segment));
  if (state.scenarios.length > 0) params.set("scenarios", state.scenarios.join(","));
  return `#${params.toString()}`;
}

export function decodeState(hash: string): ViewState {
  const params = new URLSearchParams(hash.replace(/^#/, ""));
  const view = params.get("view");
  const segment = params.get("segment");
  const scenarios = params.get("scenarios");
  const parsedSegment = segment === null ? NaN : Number(segment);
  return {
    view: VIEWS.includes(view as ViewName) ? (view as ViewName) : DEFAULT_STATE.view,
    segment: Number.isInteger(parsedSegment) ? parsedSegment : null,
    scenarios:
      scenarios === null || scenarios === ""
        ? []
        : scenarios.split(",").filter((id) => id.length > 0),
  };
}
