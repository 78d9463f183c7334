import { describe, expect, it } from "vitest";

import {
  basicBars,
  clusterBars,
  clusterRanks,
  hasWallTimes,
  higherIsBetter,
  initialState,
  overallPoints,
  rankingOrder,
  selectMetric,
  setAllVisible,
  setTab,
  sidebarRows,
  sortedByScore,
  timeSlices,
  toggleSystem,
} from "../src/model.js";
import { parseResults } from "../src/types.js";
import { render } from "../src/views.js";
import { BLEU_ORDER, CHRF_ORDER, TER_ORDER, loadFixture, withoutWallTimes } from "./helpers.js";

describe("parseResults", () => {
  it("accepts the sample payload", () => {
    const results = loadFixture();
    expect(results.systems).toHaveLength(8);
    expect(results.metrics).toEqual(["BLEU", "TER", "chrF"]);
  });

  it("rejects unsupported schema versions", () => {
    const raw = structuredClone(loadFixture()) as unknown as Record<string, unknown>;
    raw.schema_version = "99";
    expect(() => parseResults(raw)).toThrow(/schema_version/);
  });

  it("rejects non-object payloads", () => {
    expect(() => parseResults([1, 2])).toThrow(/top level/);
    expect(() => parseResults("nope")).toThrow(/top level/);
  });

  it("rejects missing system fields", () => {
    const raw = structuredClone(loadFixture()) as unknown as { systems: Record<string, unknown>[] };
    delete raw.systems[0].is_baseline;
    expect(() => parseResults(raw)).toThrow(/is_baseline/);
  });

  it("rejects systems missing a listed metric", () => {
    const raw = loadFixture();
    delete (raw.systems[0].corpus_scores as Record<string, number>)["chrF"];
    expect(() => parseResults(structuredClone(raw))).toThrow(/no chrF score/);
  });

  it("rejects malformed rankings", () => {
    const raw = structuredClone(loadFixture()) as unknown as {
      rankings: Record<string, { clusters: unknown; p_values: unknown }>;
    };
    raw.rankings.BLEU.clusters = "oops";
    expect(() => parseResults(raw)).toThrow(/clusters/);
  });
});

describe("metric direction", () => {
  it("treats quality scores as higher-is-better", () => {
    expect(higherIsBetter("BLEU")).toBe(true);
    expect(higherIsBetter("chrF")).toBe(true);
  });

  it("treats error rates as lower-is-better", () => {
    expect(higherIsBetter("TER")).toBe(false);
    expect(higherIsBetter("WER")).toBe(false);
    expect(higherIsBetter("bWER")).toBe(false);
  });

  it("defaults unknown metrics to higher-is-better", () => {
    expect(higherIsBetter("ROUGE")).toBe(true);
  });
});

describe("initialState", () => {
  it("starts on the main metric with everything visible", () => {
    const results = loadFixture();
    const state = initialState(results);
    expect(state.selectedMetric).toBe("BLEU");
    expect(state.visibleSystems.size).toBe(8);
    expect(state.activeTab).toBe("Basic");
  });

  it("falls back to the first listed metric", () => {
    const results = loadFixture();
    results.main_metric = "WER";
    expect(initialState(results).selectedMetric).toBe("BLEU");
  });

  it("leaves the metric empty when none are listed", () => {
    const results = loadFixture();
    results.metrics = [];
    expect(initialState(results).selectedMetric).toBe("");
  });
});

describe("state transitions", () => {
  it("switches to any listed metric", () => {
    const results = loadFixture();
    const state = selectMetric(initialState(results), results, "chrF");
    expect(state.selectedMetric).toBe("chrF");
  });

  it("ignores metrics the file does not list", () => {
    const results = loadFixture();
    const state = initialState(results);
    expect(selectMetric(state, results, "WER")).toBe(state);
  });

  it("toggles visibility without mutating the previous state", () => {
    const results = loadFixture();
    const before = initialState(results);
    const after = toggleSystem(before, results, "EuroLLM");
    expect(after.visibleSystems.has("EuroLLM")).toBe(false);
    expect(after.visibleSystems.size).toBe(7);
    expect(before.visibleSystems.size).toBe(8);
    const restored = toggleSystem(after, results, "EuroLLM");
    expect(restored.visibleSystems.size).toBe(8);
  });

  it("ignores unknown system names", () => {
    const results = loadFixture();
    const state = initialState(results);
    expect(toggleSystem(state, results, "nonesuch")).toBe(state);
  });

  it("shows all or none at once", () => {
    const results = loadFixture();
    const none = setAllVisible(initialState(results), results, false);
    expect(none.visibleSystems.size).toBe(0);
    expect(setAllVisible(none, results, true).visibleSystems.size).toBe(8);
  });

  it("blocks the time-based tabs when wall times are absent", () => {
    const results = withoutWallTimes(loadFixture());
    const state = initialState(results);
    expect(setTab(state, results, "Time")).toBe(state);
    expect(setTab(state, results, "Overall")).toBe(state);
    expect(setTab(state, results, "Clusters").activeTab).toBe("Clusters");
  });

  it("allows the time-based tabs when wall times exist", () => {
    const results = loadFixture();
    const state = setTab(initialState(results), results, "Overall");
    expect(state.activeTab).toBe("Overall");
  });

  it("never mutates the payload", () => {
    const results = loadFixture();
    const snapshot = JSON.stringify(results);
    let state = initialState(results);
    state = selectMetric(state, results, "TER");
    state = toggleSystem(state, results, "mBART");
    state = setTab(state, results, "Clusters");
    state = setAllVisible(state, results, false);
    expect(JSON.stringify(results)).toBe(snapshot);
  });

  it("restores the identical view after switching a metric away and back", () => {
    const results = loadFixture();
    const start = initialState(results);
    const roundTrip = selectMetric(selectMetric(start, results, "chrF"), results, "BLEU");
    expect(render(results, roundTrip)).toBe(render(results, start));
  });
});

describe("ordering", () => {
  it("ranks by BLEU in the published order", () => {
    expect(rankingOrder(loadFixture(), "BLEU")).toEqual(BLEU_ORDER);
  });

  it("inverts M2M-100 and mBART under chrF", () => {
    const order = rankingOrder(loadFixture(), "chrF");
    expect(order).toEqual(CHRF_ORDER);
    expect(order.indexOf("mBART")).toBeLessThan(order.indexOf("M2M-100"));
  });

  it("sorts error rates ascending", () => {
    expect(sortedByScore(loadFixture(), "TER")).toEqual(TER_ORDER);
  });

  it("falls back to score order when a ranking is missing", () => {
    const results = loadFixture();
    delete results.rankings["BLEU"];
    expect(rankingOrder(results, "BLEU")).toEqual(BLEU_ORDER);
  });

  it("breaks score ties alphabetically", () => {
    const results = loadFixture();
    for (const system of results.systems) system.corpus_scores["BLEU"] = 10;
    const names = [...BLEU_ORDER].sort();
    expect(sortedByScore(results, "BLEU")).toEqual(names);
  });
});

describe("cluster ranks", () => {
  it("numbers clusters from one", () => {
    const ranks = clusterRanks(loadFixture(), "BLEU");
    expect(ranks.get("Seed-x7b")).toBe(1);
    expect(ranks.get("EuroLLM")).toBe(8);
  });

  it("gives tied systems the same rank", () => {
    const ranks = clusterRanks(loadFixture(), "TER");
    expect(ranks.get("Seed-x7b")).toBe(1);
    expect(ranks.get("MADLAD-400")).toBe(1);
    expect(ranks.get("NLLB-200")).toBe(2);
  });
});

describe("sidebar rows", () => {
  it("lists visible systems best first with scores", () => {
    const results = loadFixture();
    const rows = sidebarRows(results, initialState(results));
    expect(rows.map((row) => row.name)).toEqual(BLEU_ORDER);
    expect(rows[0].score).toBe(38.84);
    expect(rows[7].score).toBe(0.85);
  });

  it("flags baselines", () => {
    const results = loadFixture();
    const rows = sidebarRows(results, initialState(results));
    expect(rows.filter((row) => row.isBaseline).map((row) => row.name)).toEqual(["OPUS-MT"]);
  });

  it("drops hidden systems", () => {
    const results = loadFixture();
    const state = toggleSystem(initialState(results), results, "EuroLLM");
    const rows = sidebarRows(results, state);
    expect(rows).toHaveLength(7);
    expect(rows.some((row) => row.name === "EuroLLM")).toBe(false);
  });

  it("is empty without a selected metric", () => {
    const results = loadFixture();
    results.metrics = [];
    expect(sidebarRows(results, initialState(results))).toEqual([]);
  });
});

describe("chart data", () => {
  it("builds one bar per visible system", () => {
    const results = loadFixture();
    const bars = basicBars(results, initialState(results));
    expect(bars.map((bar) => bar.label)).toEqual(BLEU_ORDER);
    expect(bars[0].value).toBe(38.84);
    expect(bars.find((bar) => bar.label === "OPUS-MT")?.isBaseline).toBe(true);
  });

  it("keeps only timed systems in the pie", () => {
    const results = loadFixture();
    results.systems[2].wall_time_seconds = null;
    const slices = timeSlices(results, initialState(results));
    expect(slices).toHaveLength(7);
    expect(slices.some((slice) => slice.name === "NLLB-200")).toBe(false);
    expect(slices[0]).toEqual({ name: "Seed-x7b", seconds: 236.28 });
  });

  it("plots score against time", () => {
    const results = loadFixture();
    const points = overallPoints(results, initialState(results));
    const seed = points.find((point) => point.name === "Seed-x7b");
    expect(seed).toEqual({ name: "Seed-x7b", x: 236.28, y: 38.84, isBaseline: false });
    expect(points).toHaveLength(8);
  });

  it("averages cluster members", () => {
    const results = loadFixture();
    const state = selectMetric(initialState(results), results, "TER");
    const bars = clusterBars(results, state);
    expect(bars).toHaveLength(7);
    expect(bars[0].names).toEqual(["Seed-x7b", "MADLAD-400"]);
    expect(bars[0].average).toBeCloseTo((51.0 + 52.43) / 2, 10);
    expect(bars.find((bar) => bar.names.includes("OPUS-MT"))?.hasBaseline).toBe(true);
  });

  it("averages only the visible members of a cluster", () => {
    const results = loadFixture();
    let state = selectMetric(initialState(results), results, "TER");
    state = toggleSystem(state, results, "MADLAD-400");
    const bars = clusterBars(results, state);
    expect(bars[0].names).toEqual(["Seed-x7b"]);
    expect(bars[0].average).toBe(51.0);
  });

  it("drops clusters whose members are all hidden", () => {
    const results = loadFixture();
    let state = selectMetric(initialState(results), results, "TER");
    state = toggleSystem(state, results, "Seed-x7b");
    state = toggleSystem(state, results, "MADLAD-400");
    const bars = clusterBars(results, state);
    expect(bars).toHaveLength(6);
    expect(bars[0].rank).toBe(2);
    expect(bars[0].names).toEqual(["NLLB-200"]);
  });

  it("reports wall time availability", () => {
    expect(hasWallTimes(loadFixture())).toBe(true);
    expect(hasWallTimes(withoutWallTimes(loadFixture()))).toBe(false);
  });
});
