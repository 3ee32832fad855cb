/** Response shapes of the pavetwin HTTP API. The dashboard never computes
 * displayed numbers itself — everything rendered comes from these bodies. */

export interface SegmentFeatures {
  length: number;
  age: number;
  traffic_volume: number;
  material: string;
}

export interface NetworkNode {
  id: number;
  features: SegmentFeatures;
  features_scaled: number[];
  condition: number;
}

export interface NetworkEdge {
  source: number;
  target: number;
  weight: number;
}

export interface NetworkResponse {
  nodes: NetworkNode[];
  edges: NetworkEdge[];
}

export interface HistoryPoint {
  month: number;
  distress_level: number;
}

export interface SegmentHistoryResponse {
  segment_id: number;
  history: HistoryPoint[];
  prediction: number;
}

export interface PredictionRow {
  segment_id: number;
  predicted: number;
}

export interface PredictionsResponse {
  predictions: PredictionRow[];
}

export type AlertKind = "threshold_breach" | "rapid_drop";

export interface AlertRow {
  segment_id: number;
  month: number;
  observed: number;
  threshold: number;
  kind: AlertKind;
}

export interface AlertsResponse {
  alerts: AlertRow[];
}

export interface StepResponse {
  month: number;
  alerts: Pick<AlertRow, "segment_id" | "month" | "kind">[];
}

export interface ScenarioCreatedResponse {
  id: string;
  base_month: number;
}

export type ActionKind = "reconstruct" | "resurface" | "patch";

export interface TrajectoryPoint {
  month: number;
  twin_month: number;
  mean_condition: number;
  below_threshold: number;
  condition: number[];
  forecast: number[];
}

export interface TrajectoryResponse {
  id: string;
  trajectory: TrajectoryPoint[];
}

export interface ScenarioSummary {
  months: number[];
  mean_condition: number[];
  below_threshold: number[];
  total_cost: number;
}

export interface CompareResponse {
  comparison: Record<string, ScenarioSummary>;
}

export interface ModelScores {
  mae: number;
  rmse: number;
  r2: number;
  mse: number;
  n: number;
}

export interface ReportResponse {
  models: Record<string, ModelScores>;
}

export interface HealthResponse {
  version: string;
  dataset_fingerprint: string;
  model_seed: number;
  twin_month: number;
  twin_version: number;
}

export interface ApiErrorBody {
  code: string;
  message: string;
}
