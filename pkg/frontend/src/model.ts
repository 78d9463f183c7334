import { parseResults } from "./types.js";
import type { ResultsPayload, SystemResult, TabName, ViewState } from "./types.js";

// Error-rate metrics rank ascending; everything else descends. Must agree
// with the scorer's notion of direction or the sidebar would sort backwards.
const LOWER_IS_BETTER = new Set(["TER", "WER", "bWER"]);

export function higherIsBetter(metric: string): boolean {
  return !LOWER_IS_BETTER.has(metric);
}

export async function loadResults(baseUrl: string): Promise<ResultsPayload> {
  const response = await fetch(`${baseUrl}/api/results`);
  if (!response.ok) {
    throw new Error(`server returned HTTP ${response.status}`);
  }
  return parseResults(await response.json());
}

export function initialState(results: ResultsPayload): ViewState {
  const metrics = results.metrics;
  const selectedMetric = metrics.includes(results.main_metric) ? results.main_metric : metrics[0] ?? "";
  return {
    selectedMetric,
    visibleSystems: new Set(results.systems.map((s) => s.name)),
    activeTab: "Basic",
  };
}

// State transitions return a fresh state and never touch the payload;
// invalid requests leave the state unchanged.

export function selectMetric(state: ViewState, results: ResultsPayload, metric: string): ViewState {
  if (!results.metrics.includes(metric)) return state;
  return { ...state, selectedMetric: metric };
}

export function toggleSystem(state: ViewState, results: ResultsPayload, name: string): ViewState {
  if (!results.systems.some((s) => s.name === name)) return state;
  const visible = new Set(state.visibleSystems);
  if (visible.has(name)) {
    visible.delete(name);
  } else {
    visible.add(name);
  }
  return { ...state, visibleSystems: visible };
}

export function setAllVisible(state: ViewState, results: ResultsPayload, visible: boolean): ViewState {
  const names = visible ? results.systems.map((s) => s.name) : [];
  return { ...state, visibleSystems: new Set(names) };
}

export function setTab(state: ViewState, results: ResultsPayload, tab: TabName): ViewState {
  if ((tab === "Time" || tab === "Overall") && !hasWallTimes(results)) return state;
  return { ...state, activeTab: tab };
}

export function hasWallTimes(results: ResultsPayload): boolean {
  return results.systems.some((s) => s.wall_time_seconds !== null);
}

export function systemByName(results: ResultsPayload, name: string): SystemResult {
  const system = results.systems.find((s) => s.name === name);
  if (system === undefined) throw new Error(`unknown system ${name}`);
  return system;
}

// Best-first order: by score in the metric's direction, ties alphabetical.
export function sortedByScore(results: ResultsPayload, metric: string): string[] {
  const sign = higherIsBetter(metric) ? -1 : 1;
  return results.systems
    .map((s) => s.name)
    .sort((a, b) => {
      const left = systemByName(results, a).corpus_scores[metric];
      const right = systemByName(results, b).corpus_scores[metric];
      if (left !== right) return sign * (left - right);
      return a < b ? -1 : a > b ? 1 : 0;
    });
}

// The server already ranked each metric; its flattened clusters are the
// canonical best-first order, including tie handling.
export function rankingOrder(results: ResultsPayload, metric: string): string[] {
  const ranking = results.rankings[metric];
  if (ranking === undefined) return sortedByScore(results, metric);
  return ranking.clusters.flat();
}

// Cluster rank per system, 1 = best cluster.
export function clusterRanks(results: ResultsPayload, metric: string): Map<string, number> {
  const ranks = new Map<string, number>();
  const ranking = results.rankings[metric];
  if (ranking === undefined) return ranks;
  ranking.clusters.forEach((cluster, index) => {
    for (const name of cluster) ranks.set(name, index + 1);
  });
  return ranks;
}

export interface SidebarRow {
  rank: number | null;
  name: string;
  score: number;
  isBaseline: boolean;
}

// Ranking table rows: visible systems only, best first.
export function sidebarRows(results: ResultsPayload, state: ViewState): SidebarRow[] {
  if (state.selectedMetric === "") return [];
  const ranks = clusterRanks(results, state.selectedMetric);
  return rankingOrder(results, state.selectedMetric)
    .filter((name) => state.visibleSystems.has(name))
    .map((name) => {
      const system = systemByName(results, name);
      return {
        rank: ranks.get(name) ?? null,
        name,
        score: system.corpus_scores[state.selectedMetric],
        isBaseline: system.is_baseline,
      };
    });
}

export interface BarItem {
  label: string;
  value: number;
  isBaseline: boolean;
}

// Basic tab: one bar per visible system, best to worst.
export function basicBars(results: ResultsPayload, state: ViewState): BarItem[] {
  return sidebarRows(results, state).map((row) => ({
    label: row.name,
    value: row.score,
    isBaseline: row.isBaseline,
  }));
}

export interface TimeSlice {
  name: string;
  seconds: number;
}

// Time tab: visible systems that recorded a wall time, in ranked order.
export function timeSlices(results: ResultsPayload, state: ViewState): TimeSlice[] {
  return sidebarRows(results, state)
    .map((row) => ({ name: row.name, seconds: systemByName(results, row.name).wall_time_seconds }))
    .filter((slice): slice is TimeSlice => slice.seconds !== null);
}

export interface ScatterPoint {
  name: string;
  x: number;
  y: number;
  isBaseline: boolean;
}

// Overall tab: score against wall time, x = seconds, y = score.
export function overallPoints(results: ResultsPayload, state: ViewState): ScatterPoint[] {
  return sidebarRows(results, state).flatMap((row) => {
    const seconds = systemByName(results, row.name).wall_time_seconds;
    if (seconds === null) return [];
    return [{ name: row.name, x: seconds, y: row.score, isBaseline: row.isBaseline }];
  });
}

export interface ClusterBar {
  rank: number;
  names: string[];
  average: number;
  hasBaseline: boolean;
}

// Clusters tab: average score of each cluster's visible members; clusters
// with every member hidden are dropped.
export function clusterBars(results: ResultsPayload, state: ViewState): ClusterBar[] {
  const ranking = results.rankings[state.selectedMetric];
  if (ranking === undefined) return [];
  return ranking.clusters.flatMap((cluster, index) => {
    const members = cluster.filter((name) => state.visibleSystems.has(name));
    if (members.length === 0) return [];
    const systems = members.map((name) => systemByName(results, name));
    const total = systems.reduce((sum, s) => sum + s.corpus_scores[state.selectedMetric], 0);
    return [
      {
        rank: index + 1,
        names: members,
        average: total / members.length,
        hasBaseline: systems.some((s) => s.is_baseline),
      },
    ];
  });
}
