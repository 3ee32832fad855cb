/** Canned API responses shaped exactly like the server's JSON bodies. */

import type {
  AlertsResponse,
  CompareResponse,
  HealthResponse,
  NetworkResponse,
  ReportResponse,
  SegmentHistoryResponse,
} from "../src/api/types.js";

export const networkFixture: NetworkResponse = {
  nodes: [
    {
      id: 0,
      features: { length: 820.5, age: 12, traffic_volume: 4100.0, material: "asphalt" },
      features_scaled: [0.1, -0.4, 0.9, -0.2],
      condition: 82.3,
    },
    {
      id: 1,
      features: { length: 150.0, age: 31, traffic_volume: 900.0, material: "concrete" },
      features_scaled: [-1.2, 1.1, -0.5, 1.4],
      condition: 44.9,
    },
    {
      id: 2,
      features: { length: 600.2, age: 38, traffic_volume: 22000.0, material: "asphalt" },
      features_scaled: [0.0, 1.6, 1.3, -0.2],
      condition: 21.5,
    },
  ],
  edges: [
    { source: 0, target: 1, weight: 0.8 },
    { source: 1, target: 0, weight: 0.8 },
    { source: 1, target: 2, weight: 0.3 },
    { source: 2, target: 1, weight: 0.3 },
  ],
};

export const historyFixture: SegmentHistoryResponse = {
  segment_id: 1,
  history: [
    { month: 0, distress_level: 55.2 },
    { month: 1, distress_level: 51.7 },
    { month: 2, distress_level: 48.0 },
    { month: 3, distress_level: 44.9 },
  ],
  prediction: 41.6,
};

export const alertsFixture: AlertsResponse = {
  alerts: [
    { segment_id: 2, month: 9, observed: 28.1, threshold: 40.0, kind: "threshold_breach" },
    { segment_id: 1, month: 7, observed: 39.4, threshold: 40.0, kind: "threshold_breach" },
    { segment_id: 2, month: 5, observed: 47.0, threshold: 10.0, kind: "rapid_drop" },
  ],
};

export const compareFixture: CompareResponse = {
  comparison: {
    "scenario-1": {
      months: [0, 1, 2],
      mean_condition: [61.0, 58.2, 55.5],
      below_threshold: [1, 1, 2],
      total_cost: 0,
    },
    "scenario-2": {
      months: [0, 1, 2],
      mean_condition: [74.0, 71.5, 69.2],
      below_threshold: [0, 0, 0],
      total_cost: 140,
    },
  },
};

export const reportFixture: ReportResponse = {
  models: {
    gnn: { mae: 1.61, rmse: 1.99, r2: 0.642, mse: 3.98, n: 200 },
    linear: { mae: 1.83, rmse: 2.33, r2: 0.512, mse: 5.42, n: 200 },
  },
};

export const healthFixture: HealthResponse = {
  version: "0.1.0",
  dataset_fingerprint: "ab12cd34ef56ab12",
  model_seed: 42,
  twin_month: 5,
  twin_version: 3,
};

/** A fetch stub serving canned bodies keyed by "METHOD path". */
export function fakeFetch(
  routes: Record<string, { status?: number; body: unknown; version?: number }>,
  log?: string[],
): (url: string, init?: RequestInit) => Promise<Response> {
  return async (url, init) => {
    const method = init?.method ?? "GET";
    const key = `${method} ${url}`;
    log?.push(key);
    const route = routes[key];
    if (!route) {
      return new Response(JSON.stringify({ code: "not_found", message: key }), {
        status: 404,
        headers: { "Content-Type": "application/json" },
      });
    }
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (route.version !== undefined) headers["X-Twin-Version"] = String(route.version);
    return new Response(JSON.stringify(route.body), {
      status: route.status ?? 200,
      headers,
    });
  };
}
