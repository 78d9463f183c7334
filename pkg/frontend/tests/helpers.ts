import rawFixture from "./fixture.json";
import { parseResults } from "../src/types.js";
import type { ResultsPayload } from "../src/types.js";

// Eight-system sample leaderboard, as served by GET /api/results.
export function loadFixture(): ResultsPayload {
  return parseResults(structuredClone(rawFixture));
}

export const BLEU_ORDER = [
  "Seed-x7b",
  "MADLAD-400",
  "NLLB-200",
  "OPUS-MT",
  "M2M-100",
  "mBART",
  "T5-large",
  "EuroLLM",
];

// chrF swaps the M2M-100/mBART pair relative to BLEU.
export const CHRF_ORDER = [
  "Seed-x7b",
  "MADLAD-400",
  "NLLB-200",
  "OPUS-MT",
  "mBART",
  "M2M-100",
  "T5-large",
  "EuroLLM",
];

export const TER_ORDER = [
  "Seed-x7b",
  "MADLAD-400",
  "NLLB-200",
  "OPUS-MT",
  "mBART",
  "M2M-100",
  "T5-large",
  "EuroLLM",
];

export function withoutWallTimes(results: ResultsPayload): ResultsPayload {
  const copy = structuredClone(results) as ResultsPayload;
  for (const system of copy.systems) system.wall_time_seconds = null;
  return copy;
}
