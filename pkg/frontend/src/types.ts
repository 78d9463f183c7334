// Shapes mirror the results JSON served at GET /api/results (schema version "1").

export interface ArtConfig {
  trials: number;
  alpha: number;
  seed: number;
}

export interface SystemResult {
  name: string;
  is_baseline: boolean;
  wall_time_seconds: number | null;
  corpus_scores: Record<string, number>;
  segment_scores: Record<string, number[]>;
}

export interface MetricRanking {
  clusters: string[][];
  p_values: number[];
}

export interface ResultsPayload {
  schema_version: string;
  task: string;
  created_at: string;
  main_metric: string;
  metrics: string[];
  art_config: ArtConfig;
  systems: SystemResult[];
  rankings: Record<string, MetricRanking>;
}

export type TabName = "Basic" | "Time" | "Overall" | "Clusters";

export const TABS: readonly TabName[] = ["Basic", "Time", "Overall", "Clusters"];

export interface ViewState {
  // Empty string only when the results file lists no metrics.
  selectedMetric: string;
  visibleSystems: ReadonlySet<string>;
  activeTab: TabName;
}

const SUPPORTED_SCHEMA = "1";

function fail(message: string): never {
  throw new Error(`invalid results payload: ${message}`);
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function checkStringArray(value: unknown, where: string): string[] {
  if (!Array.isArray(value) || value.some((item) => typeof item !== "string")) {
    fail(`${where} must be an array of strings`);
  }
  return value as string[];
}

function checkSystem(value: unknown, index: number): SystemResult {
  if (!isRecord(value)) fail(`systems[${index}] must be an object`);
  const { name, is_baseline, wall_time_seconds, corpus_scores, segment_scores } = value;
  if (typeof name !== "string" || name === "") fail(`systems[${index}].name must be a non-empty string`);
  if (typeof is_baseline !== "boolean") fail(`systems[${index}].is_baseline must be a boolean`);
  if (wall_time_seconds !== null && typeof wall_time_seconds !== "number") {
    fail(`systems[${index}].wall_time_seconds must be a number or null`);
  }
  if (!isRecord(corpus_scores) || Object.values(corpus_scores).some((s) => typeof s !== "number")) {
    fail(`systems[${index}].corpus_scores must map metric names to numbers`);
  }
  if (!isRecord(segment_scores)) fail(`systems[${index}].segment_scores must be an object`);
  return value as unknown as SystemResult;
}

function checkRanking(value: unknown, metric: string): MetricRanking {
  if (!isRecord(value)) fail(`rankings[${metric}] must be an object`);
  if (!Array.isArray(value.clusters)) fail(`rankings[${metric}].clusters must be an array`);
  value.clusters.forEach((cluster, i) => checkStringArray(cluster, `rankings[${metric}].clusters[${i}]`));
  if (!Array.isArray(value.p_values) || value.p_values.some((p) => typeof p !== "number")) {
    fail(`rankings[${metric}].p_values must be an array of numbers`);
  }
  return value as unknown as MetricRanking;
}

// Validates just enough structure for rendering; the server already enforces
// the full schema when the file is written.
export function parseResults(value: unknown): ResultsPayload {
  if (!isRecord(value)) fail("top level must be an object");
  if (value.schema_version !== SUPPORTED_SCHEMA) {
    fail(`unsupported schema_version ${JSON.stringify(value.schema_version)}`);
  }
  if (typeof value.task !== "string") fail("task must be a string");
  if (typeof value.main_metric !== "string") fail("main_metric must be a string");
  const metrics = checkStringArray(value.metrics, "metrics");
  if (!Array.isArray(value.systems)) fail("systems must be an array");
  const systems = value.systems.map(checkSystem);
  if (!isRecord(value.rankings)) fail("rankings must be an object");
  for (const [metric, ranking] of Object.entries(value.rankings)) checkRanking(ranking, metric);
  for (const metric of metrics) {
    for (const system of systems) {
      if (typeof system.corpus_scores[metric] !== "number") {
        fail(`system ${system.name} has no ${metric} score`);
      }
    }
  }
  return value as unknown as ResultsPayload;
}
