// Scores are displayed with two decimals everywhere, matching the table exports.
export function fmt2(value) {
    return value.toFixed(2);
}
// Wall times are shown untruncated; hover text promises the exact stored value.
export function secondsLabel(seconds) {
    return `${seconds} s`;
}
export function escapeHtml(text) {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}
// Stable coordinates for SVG output: two decimals is plenty at chart scale.
export function coord(value) {
    return String(Math.round(value * 100) / 100);
}
