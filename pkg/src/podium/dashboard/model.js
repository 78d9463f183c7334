import { parseResults } from "./types.js";
// Error-rate metrics rank ascending; everything else descends. Must agree
// with the scorer's notion of direction or the sidebar would sort backwards.
const LOWER_IS_BETTER = new Set(["TER", "WER", "bWER"]);
export function higherIsBetter(metric) {
    return !LOWER_IS_BETTER.has(metric);
}
export async function loadResults(baseUrl) {
    const response = await fetch(`${baseUrl}/api/results`);
    if (!response.ok) {
        throw new Error(`server returned HTTP ${response.status}`);
    }
    return parseResults(await response.json());
}
export function initialState(results) {
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
export function selectMetric(state, results, metric) {
    if (!results.metrics.includes(metric))
        return state;
    return { ...state, selectedMetric: metric };
}
export function toggleSystem(state, results, name) {
    if (!results.systems.some((s) => s.name === name))
        return state;
    const visible = new Set(state.visibleSystems);
    if (visible.has(name)) {
        visible.delete(name);
    }
    else {
        visible.add(name);
    }
    return { ...state, visibleSystems: visible };
}
export function setAllVisible(state, results, visible) {
    const names = visible ? results.systems.map((s) => s.name) : [];
    return { ...state, visibleSystems: new Set(names) };
}
export function setTab(state, results, tab) {
    if ((tab === "Time" || tab === "Overall") && !hasWallTimes(results))
        return state;
    return { ...state, activeTab: tab };
}
export function hasWallTimes(results) {
    return results.systems.some((s) => s.wall_time_seconds !== null);
}
export function systemByName(results, name) {
    const system = results.systems.find((s) => s.name === name);
    if (system === undefined)
        throw new Error(`unknown system ${name}`);
    return system;
}
// Best-first order: by score in the metric's direction, ties alphabetical.
export function sortedByScore(results, metric) {
    const sign = higherIsBetter(metric) ? -1 : 1;
    return results.systems
        .map((s) => s.name)
        .sort((a, b) => {
        const left = systemByName(results, a).corpus_scores[metric];
        const right = systemByName(results, b).corpus_scores[metric];
        if (left !== right)
            return sign * (left - right);
        return a < b ? -1 : a > b ? 1 : 0;
    });
}
// The server already ranked each metric; its flattened clusters are the
// canonical best-first order, including tie handling.
export function rankingOrder(results, metric) {
    const ranking = results.rankings[metric];
    if (ranking === undefined)
        return sortedByScore(results, metric);
    return ranking.clusters.flat();
}
// Cluster rank per system, 1 = best cluster.
export function clusterRanks(results, metric) {
    const ranks = new Map();
    const ranking = results.rankings[metric];
    if (ranking === undefined)
        return ranks;
    ranking.clusters.forEach((cluster, index) => {
        for (const name of cluster)
            ranks.set(name, index + 1);
    });
    return ranks;
}
// Ranking table rows: visible systems only, best first.
export function sidebarRows(results, state) {
    if (state.selectedMetric === "")
        return [];
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
// Basic tab: one bar per visible system, best to worst.
export function basicBars(results, state) {
    return sidebarRows(results, state).map((row) => ({
        label: row.name,
        value: row.score,
        isBaseline: row.isBaseline,
    }));
}
// Time tab: visible systems that recorded a wall time, in ranked order.
export function timeSlices(results, state) {
    return sidebarRows(results, state)
        .map((row) => ({ name: row.name, seconds: systemByName(results, row.name).wall_time_seconds }))
        .filter((slice) => slice.seconds !== null);
}
// Overall tab: score against wall time, x = seconds, y = score.
export function overallPoints(results, state) {
    return sidebarRows(results, state).flatMap((row) => {
        const seconds = systemByName(results, row.name).wall_time_seconds;
        if (seconds === null)
            return [];
        return [{ name: row.name, x: seconds, y: row.score, isBaseline: row.isBaseline }];
    });
}
// Clusters tab: average score of each cluster's visible members; clusters
// with every member hidden are dropped.
export function clusterBars(results, state) {
    const ranking = results.rankings[state.selectedMetric];
    if (ranking === undefined)
        return [];
    return ranking.clusters.flatMap((cluster, index) => {
        const members = cluster.filter((name) => state.visibleSystems.has(name));
        if (members.length === 0)
            return [];
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
