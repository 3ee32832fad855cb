/** Typed fetch client for the pavetwin API.
 *
 * Every response's `X-Twin-Version` header is tracked so views can tell
 * when the twin moved underneath them. Conflict responses (409, another
 * writer holds the twin) surface as `ConflictError` so the UI can offer
 * a retry instead of failing silently.
 */

import type {
  ActionKind,
  AlertsResponse,
  ApiErrorBody,
  CompareResponse,
  HealthResponse,
  NetworkResponse,
  PredictionsResponse,
  ReportResponse,
  ScenarioCreatedResponse,
  SegmentHistoryResponse,
  StepResponse,
  TrajectoryResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class ConflictError extends ApiError {
  constructor(code: string, message: string) {
    super(409, code, message);
    this.name = "ConflictError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private version = -1;
  private versionListeners: ((version: number) => void)[] = [];

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  /** Last twin version seen in any response header; -1 before first call. */
  get twinVersion(): number {
    return this.version;
  }

  onVersionChange(listener: (version: number) => void): void {
    this.versionListeners.push(listener);
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const header = res.headers.get("X-Twin-Version");
    if (header !== null) {
      const seen = Number(header);
      if (seen !== this.version) {
        this.version = seen;
        for (const listener of this.versionListeners) listener(seen);
      }
    }
    if (!res.ok) {
      let body: ApiErrorBody = { code: "unknown", message: res.statusText };
      try {
        body = (await res.json()) as ApiErrorBody;
      } catch {
        // Non-JSON error body; keep the status text.
      }
      if (res.status === 409) throw new ConflictError(body.code, body.message);
      throw new ApiError(res.status, body.code, body.message);
    }
    return (await res.json()) as T;
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
  }

  network(): Promise<NetworkResponse> {
    return this.request("/api/network");
  }

  segmentHistory(segmentId: number): Promise<SegmentHistoryResponse> {
    return this.request(`/api/segments/${segmentId}/history`);
  }

  predictions(): Promise<PredictionsResponse> {
    return this.request("/api/predictions");
  }

  alerts(): Promise<AlertsResponse> {
    return this.request("/api/alerts");
  }

  report(): Promise<ReportResponse> {
    return this.request("/api/report");
  }

  health(): Promise<HealthResponse> {
    return this.request("/api/health");
  }

  step(months: number): Promise<StepResponse> {
    return this.post("/api/twin/step", { months });
  }

  createScenario(): Promise<ScenarioCreatedResponse> {
    return this.post("/api/scenarios");
  }

  addAction(
    scenarioId: string,
    month: number,
    kind: ActionKind,
    segmentIds: number[],
  ): Promise<{ id: string; scheduled: number }> {
    return this.post(`/api/scenarios/${scenarioId}/actions`, {
      month,
      kind,
      segment_ids: segmentIds,
    });
  }

  runScenario(scenarioId: string, horizon: number): Promise<TrajectoryResponse> {
    return this.post(`/api/scenarios/${scenarioId}/run`, { horizon });
  }

  trajectory(scenarioId: string): Promise<TrajectoryResponse> {
    return this.request(`/api/scenarios/${scenarioId}/trajectory`);
  }

  compare(scenarioIds: string[]): Promise<CompareResponse> {
    const ids = encodeURIComponent(scenarioIds.join(","));
    return this.request(`/api/scenarios/compare?ids=${ids}`);
  }
}
