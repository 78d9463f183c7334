import { coord, escapeHtml, fmt2, secondsLabel } from "./format.js";
const PALETTE = [
    "#4e79a7",
    "#f28e2b",
    "#59a14f",
    "#b07aa1",
    "#76b7b2",
    "#edc949",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
    "#e15759",
];
const BASELINE_STROKE = 'stroke="#c0392b" stroke-dasharray="6 3" stroke-width="2"';
function renderBars(bars) {
    const labelWidth = 180;
    const plotWidth = 380;
    const rowHeight = 26;
    const barHeight = 18;
    const width = 640;
    const height = bars.length * rowHeight + 16;
    const maxValue = Math.max(...bars.map((bar) => bar.value), 0);
    const scale = maxValue > 0 ? plotWidth / maxValue : 0;
    const rows = bars.map((bar, index) => {
        const y = index * rowHeight + 8;
        const barWidth = Math.max(bar.value, 0) * scale;
        const dashed = bar.dashed ? ` ${BASELINE_STROKE}` : "";
        const cssClass = bar.dashed ? "bar baseline" : "bar";
        const fill = PALETTE[index % PALETTE.length];
        return (`<g class="bar-row">` +
            `<text class="bar-label" x="${labelWidth - 10}" y="${y + 13}" text-anchor="end">${escapeHtml(bar.label)}</text>` +
            `<rect class="${cssClass}" x="${labelWidth}" y="${y}" width="${coord(barWidth)}" height="${barHeight}"` +
            ` fill="${fill}"${dashed} ${bar.data}><title>${escapeHtml(bar.title)}</title></rect>` +
            `<text class="bar-value" x="${coord(labelWidth + barWidth + 6)}" y="${y + 13}">${fmt2(bar.value)}</text>` +
            `</g>`);
    });
    return `<svg class="chart chart-bar" role="img" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">${rows.join("")}</svg>`;
}
// Basic tab: one bar per system, already ordered best to worst.
export function metricBarChart(bars, metric) {
    return renderBars(bars.map((bar) => ({
        label: bar.label,
        value: bar.value,
        dashed: bar.isBaseline,
        title: `${bar.label} — ${metric} ${fmt2(bar.value)}`,
        data: `data-system="${escapeHtml(bar.label)}" data-value="${bar.value}"`,
    })));
}
// Clusters tab: one bar per cluster showing the average score of its
// visible members; clusters holding a baseline get the dashed marker.
export function clusterBarChart(bars, metric) {
    return renderBars(bars.map((bar) => ({
        label: `cluster ${bar.rank}`,
        value: bar.average,
        dashed: bar.hasBaseline,
        title: `${bar.names.join(", ")} — mean ${metric} ${fmt2(bar.average)}`,
        data: `data-cluster="${bar.rank}" data-value="${bar.average}" data-systems="${escapeHtml(bar.names.join("|"))}"`,
    })));
}
// Time tab: pie of wall times; hovering a slice reveals the exact seconds.
export function timeArcChart(slices) {
    const cx = 140;
    const cy = 140;
    const r = 115;
    const legendX = 300;
    const width = 640;
    const height = Math.max(280, slices.length * 22 + 20);
    const total = slices.reduce((sum, slice) => sum + slice.seconds, 0);
    const parts = [];
    let angle = -90;
    slices.forEach((slice, index) => {
        const fraction = total > 0 ? slice.seconds / total : 1 / slices.length;
        const sweep = fraction * 360;
        const fill = PALETTE[index % PALETTE.length];
        const title = `<title>${escapeHtml(slice.name)} — ${secondsLabel(slice.seconds)}</title>`;
        const attrs = `class="arc" fill="${fill}" data-system="${escapeHtml(slice.name)}" data-seconds="${slice.seconds}"`;
        if (sweep >= 359.999) {
            parts.push(`<circle ${attrs} cx="${cx}" cy="${cy}" r="${r}">${title}</circle>`);
        }
        else {
            const a0 = (angle * Math.PI) / 180;
            const a1 = ((angle + sweep) * Math.PI) / 180;
            const x0 = cx + r * Math.cos(a0);
            const y0 = cy + r * Math.sin(a0);
            const x1 = cx + r * Math.cos(a1);
            const y1 = cy + r * Math.sin(a1);
            const largeArc = sweep > 180 ? 1 : 0;
            const d = `M ${cx} ${cy} L ${coord(x0)} ${coord(y0)} A ${r} ${r} 0 ${largeArc} 1 ${coord(x1)} ${coord(y1)} Z`;
            parts.push(`<path ${attrs} d="${d}">${title}</path>`);
        }
        angle += sweep;
    });
    const legend = slices.map((slice, index) => {
        const y = 20 + index * 22;
        return (`<g class="legend-row">` +
            `<rect x="${legendX}" y="${y}" width="14" height="14" fill="${PALETTE[index % PALETTE.length]}"></rect>` +
            `<text x="${legendX + 22}" y="${y + 12}">${escapeHtml(slice.name)}</text>` +
            `</g>`);
    });
    return `<svg class="chart chart-arc" role="img" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">${parts.join("")}${legend.join("")}</svg>`;
}
// Overall tab: score against wall time, one point per system.
export function scatterChart(points, metric) {
    const width = 640;
    const height = 400;
    const left = 70;
    const right = 20;
    const top = 20;
    const bottom = 50;
    const plotWidth = width - left - right;
    const plotHeight = height - top - bottom;
    const xMax = Math.max(...points.map((p) => p.x), 0) * 1.05 || 1;
    const yMax = Math.max(...points.map((p) => p.y), 0) * 1.05 || 1;
    const xPos = (x) => left + (x / xMax) * plotWidth;
    const yPos = (y) => top + plotHeight - (y / yMax) * plotHeight;
    const dots = points.map((point) => {
        const cssClass = point.isBaseline ? "point baseline" : "point";
        return (`<circle class="${cssClass}" cx="${coord(xPos(point.x))}" cy="${coord(yPos(point.y))}" r="6"` +
            ` data-system="${escapeHtml(point.name)}" data-x="${point.x}" data-y="${point.y}">` +
            `<title>${escapeHtml(point.name)} — ${metric} ${fmt2(point.y)}, ${secondsLabel(point.x)}</title></circle>`);
    });
    const ticks = [];
    for (const fraction of [0, 0.5, 1]) {
        const xv = xMax * fraction;
        const yv = yMax * fraction;
        ticks.push(`<text class="tick" x="${coord(xPos(xv))}" y="${height - bottom + 18}" text-anchor="middle">${fmt2(xv)}</text>`, `<text class="tick" x="${left - 8}" y="${coord(yPos(yv) + 4)}" text-anchor="end">${fmt2(yv)}</text>`);
    }
    const axes = `<line class="axis" x1="${left}" y1="${top + plotHeight}" x2="${left + plotWidth}" y2="${top + plotHeight}"></line>` +
        `<line class="axis" x1="${left}" y1="${top}" x2="${left}" y2="${top + plotHeight}"></line>` +
        `<text class="axis-label" x="${left + plotWidth / 2}" y="${height - 10}" text-anchor="middle">wall time (s)</text>` +
        `<text class="axis-label" x="18" y="${top + plotHeight / 2}" text-anchor="middle"` +
        ` transform="rotate(-90 18 ${top + plotHeight / 2})">${escapeHtml(metric)}</text>`;
    return `<svg class="chart chart-scatter" role="img" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">${axes}${ticks.join("")}${dots.join("")}</svg>`;
}
