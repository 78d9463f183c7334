import { clusterBarChart, metricBarChart, scatterChart, timeArcChart } from "./charts.js";
import { escapeHtml, fmt2 } from "./format.js";
import { basicBars, clusterBars, hasWallTimes, overallPoints, sidebarRows, timeSlices, } from "./model.js";
import { TABS } from "./types.js";
export const EXPORT_FORMATS = ["csv", "latex", "json", "html"];
export function titleText(results) {
    return `${results.task} evaluation dashboard`;
}
export function renderMetricSelector(results, state) {
    if (results.metrics.length === 0) {
        return (`<label class="metric-picker">metric ` +
            `<select id="metric-select" disabled></select></label>` +
            `<span class="note">results file lists no metrics</span>`);
    }
    const options = results.metrics
        .map((metric) => {
        const selected = metric === state.selectedMetric ? " selected" : "";
        return `<option value="${escapeHtml(metric)}"${selected}>${escapeHtml(metric)}</option>`;
    })
        .join("");
    return `<label class="metric-picker">metric <select id="metric-select">${options}</select></label>`;
}
export function renderExportButtons() {
    const labels = { csv: "CSV", latex: "LaTeX", json: "JSON", html: "HTML" };
    const buttons = EXPORT_FORMATS.map((format) => `<button class="export" data-format="${format}">${labels[format]}</button>`).join("");
    return `<div class="export-buttons">${buttons}<span id="export-status" class="note"></span></div>`;
}
// Checkbox per system; stays complete regardless of current visibility so
// hidden systems can be brought back.
export function renderFilter(results, state) {
    const rows = results.systems
        .map((system) => {
        const name = escapeHtml(system.name);
        const checked = state.visibleSystems.has(system.name) ? " checked" : "";
        return (`<label class="filter-row">` +
            `<input type="checkbox" class="system-toggle" data-system="${name}"${checked}> ${name}</label>`);
    })
        .join("");
    return (`<fieldset class="system-filter"><legend>systems</legend>${rows}` +
        `<div class="filter-actions">` +
        `<button id="show-all" type="button">all</button>` +
        `<button id="show-none" type="button">none</button>` +
        `</div></fieldset>`);
}
export function renderSidebar(results, state) {
    const rows = sidebarRows(results, state);
    if (rows.length === 0) {
        return `<p class="empty-state">no systems selected</p>`;
    }
    const body = rows
        .map((row) => {
        const cssClass = row.isBaseline ? ' class="baseline-row"' : "";
        const badge = row.isBaseline ? ` <span class="badge">baseline</span>` : "";
        const rank = row.rank === null ? "–" : String(row.rank);
        return (`<tr${cssClass} data-system="${escapeHtml(row.name)}">` +
            `<td class="rank">${rank}</td>` +
            `<td class="name">${escapeHtml(row.name)}${badge}</td>` +
            `<td class="score">${fmt2(row.score)}</td></tr>`);
    })
        .join("");
    return (`<table class="ranking">` +
        `<thead><tr><th>rank</th><th>system</th><th>${escapeHtml(state.selectedMetric)}</th></tr></thead>` +
        `<tbody>${body}</tbody></table>`);
}
export function renderTabs(results, state) {
    const timed = hasWallTimes(results);
    const buttons = TABS.map((tab) => {
        const needsTimes = tab === "Time" || tab === "Overall";
        const disabled = needsTimes && !timed ? " disabled" : "";
        const active = tab === state.activeTab ? " active" : "";
        return `<button class="tab${active}" data-tab="${tab}"${disabled}>${tab}</button>`;
    }).join("");
    return `<nav class="tabs">${buttons}</nav>`;
}
export function renderChart(results, state) {
    if (state.selectedMetric === "") {
        return `<p class="empty-state">nothing to chart without a metric</p>`;
    }
    switch (state.activeTab) {
        case "Basic": {
            const bars = basicBars(results, state);
            if (bars.length === 0)
                return `<p class="empty-state">no systems selected</p>`;
            return metricBarChart(bars, state.selectedMetric);
        }
        case "Time": {
            const slices = timeSlices(results, state);
            if (slices.length === 0)
                return `<p class="empty-state">no wall times to chart</p>`;
            return timeArcChart(slices);
        }
        case "Overall": {
            const points = overallPoints(results, state);
            if (points.length === 0)
                return `<p class="empty-state">no wall times to chart</p>`;
            return scatterChart(points, state.selectedMetric);
        }
        case "Clusters": {
            const bars = clusterBars(results, state);
            if (bars.length === 0)
                return `<p class="empty-state">no systems selected</p>`;
            return clusterBarChart(bars, state.selectedMetric);
        }
    }
}
// Raw numbers behind every chart, tucked into an expander at the bottom.
export function renderDataTable(results) {
    const header = results.metrics.map((metric) => `<th>${escapeHtml(metric)}</th>`).join("");
    const rows = results.systems
        .map((system) => {
        const cells = results.metrics
            .map((metric) => `<td>${fmt2(system.corpus_scores[metric])}</td>`)
            .join("");
        const time = system.wall_time_seconds === null ? "–" : fmt2(system.wall_time_seconds);
        const baseline = system.is_baseline ? "yes" : "";
        return (`<tr><td>${escapeHtml(system.name)}</td>${cells}` +
            `<td>${time}</td><td>${baseline}</td></tr>`);
    })
        .join("");
    return (`<details class="data-expander"><summary>evaluation data</summary>` +
        `<table class="data-table">` +
        `<thead><tr><th>system</th>${header}<th>time (s)</th><th>baseline</th></tr></thead>` +
        `<tbody>${rows}</tbody></table></details>`);
}
export function renderLoading() {
    return `<p class="loading">loading results…</p>`;
}
// Retryable failure banner shown when /api/results cannot be fetched.
export function renderLoadError(message) {
    return (`<div class="error-banner"><p>could not load results: ${escapeHtml(message)}</p>` +
        `<button id="retry">retry</button></div>`);
}
export function render(results, state) {
    return (`<header class="topbar"><h1>${escapeHtml(titleText(results))}</h1>` +
        renderMetricSelector(results, state) +
        renderExportButtons() +
        `</header>` +
        `<div class="content">` +
        `<aside class="side">${renderFilter(results, state)}${renderSidebar(results, state)}</aside>` +
        `<main class="charts">${renderTabs(results, state)}` +
        `<section id="chart">${renderChart(results, state)}</section></main>` +
        `</div>` +
        `<footer>${renderDataTable(results)}</footer>`);
}
