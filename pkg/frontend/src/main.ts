import {
  initialState,
  loadResults,
  selectMetric,
  setAllVisible,
  setTab,
  toggleSystem,
} from "./model.js";
import { render, renderLoadError, renderLoading, titleText } from "./views.js";
import type { ResultsPayload, TabName, ViewState } from "./types.js";

const EXPORT_EXTENSIONS: Record<string, string> = {
  csv: "csv",
  latex: "tex",
  json: "json",
  html: "html",
};

const appElement = document.getElementById("app");
if (appElement === null) throw new Error("missing #app container");
const app: HTMLElement = appElement;

let results: ResultsPayload | null = null;
let state: ViewState | null = null;
let fetching = false;

function draw(): void {
  if (results === null || state === null) return;
  app.innerHTML = render(results, state);
}

function update(next: ViewState): void {
  if (next === state) return;
  state = next;
  draw();
}

async function load(): Promise<void> {
  if (fetching) return;
  fetching = true;
  app.innerHTML = renderLoading();
  try {
    results = await loadResults("");
    state = initialState(results);
    document.title = titleText(results);
    draw();
  } catch (error) {
    const message = error instanceof Error ? error.message : String(error);
    app.innerHTML = renderLoadError(message);
  } finally {
    fetching = false;
  }
}

function setExportStatus(message: string): void {
  const status = document.getElementById("export-status");
  if (status !== null) status.textContent = message;
}

async function downloadExport(format: string): Promise<void> {
  if (fetching) return;
  fetching = true;
  setExportStatus("");
  try {
    const response = await fetch(`/api/export?format=${encodeURIComponent(format)}`);
    if (!response.ok) {
      setExportStatus(`export failed: HTTP ${response.status}`);
      return;
    }
    const blob = await response.blob();
    const url = URL.createObjectURL(blob);
    const link = document.createElement("a");
    link.href = url;
    link.download = `results.${EXPORT_EXTENSIONS[format] ?? format}`;
    link.click();
    URL.revokeObjectURL(url);
  } catch (error) {
    const message = error instanceof Error ? error.message : String(error);
    setExportStatus(`export failed: ${message}`);
  } finally {
    fetching = false;
  }
}

// One delegated listener per event type survives full re-renders.
app.addEventListener("change", (event) => {
  if (results === null || state === null) return;
  const target = event.target;
  if (!(target instanceof HTMLElement)) return;
  if (target.id === "metric-select" && target instanceof HTMLSelectElement) {
    update(selectMetric(state, results, target.value));
  } else if (target.classList.contains("system-toggle")) {
    const name = target.dataset.system;
    if (name !== undefined) update(toggleSystem(state, results, name));
  }
});

app.addEventListener("click", (event) => {
  const target = event.target;
  if (!(target instanceof HTMLElement)) return;
  if (target.id === "retry") {
    void load();
    return;
  }
  if (results === null || state === null) return;
  if (target.classList.contains("tab")) {
    const tab = target.dataset.tab;
    if (tab !== undefined) update(setTab(state, results, tab as TabName));
  } else if (target.classList.contains("export")) {
    const format = target.dataset.format;
    if (format !== undefined) void downloadExport(format);
  } else if (target.id === "show-all") {
    update(setAllVisible(state, results, true));
  } else if (target.id === "show-none") {
    update(setAllVisible(state, results, false));
  }
});

void load();
