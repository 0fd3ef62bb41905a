/**
 * Parsing and schema checks for the CSV files the decomposition CLI writes.
 *
 * Values pass through as the exact strings found in the file; callers convert
 * to numbers only where a coordinate is needed, so nothing plotted can drift
 * from what was recorded.
 */

import Papa from "papaparse";

export const SWEEP_COLUMNS = [
  "d", "n", "s", "seed", "r", "e_w", "e_z", "max_rank", "ranks",
  "success", "restarts", "wall_time_s",
] as const;

export const RANKS_COLUMNS = [
  "d", "n", "s", "seed", "ranks", "extreme", "success",
] as const;

// sentinel seed of the per-s summary rows in sweep files
export const SUMMARY_SEED = -1;

export type Row = Record<string, string>;

export function parseCsv(
  text: string,
  required: readonly string[],
  label: string,
): Row[] {
  const parsed = Papa.parse<Row>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  const missing = required.filter((column) => !fields.includes(column));
  if (missing.length > 0) {
    throw new Error(`${label} CSV missing columns: ${missing.join(", ")}`);
  }
  return parsed.data;
}

export interface SweepSummary {
  d: number;
  n: number;
  s: number;
  eW: string;
  eZ: string;
}

/** Summary rows (sentinel seed) of a sweep file, sorted by s. */
export function sweepSummaries(text: string): SweepSummary[] {
  const rows = parseCsv(text, SWEEP_COLUMNS, "sweep");
  const summaries = rows
    .filter((row) => Number(row.seed) === SUMMARY_SEED)
    .map((row) => ({
      d: Number(row.d),
      n: Number(row.n),
      s: Number(row.s),
      eW: row.e_w,
      eZ: row.e_z,
    }));
  if (summaries.length === 0) {
    throw new Error(`sweep CSV has no summary rows (seed ${SUMMARY_SEED})`);
  }
  for (const row of summaries) {
    if (
      !Number.isInteger(row.s) ||
      !Number.isFinite(Number(row.eW)) ||
      !Number.isFinite(Number(row.eZ))
    ) {
      throw new Error(`sweep CSV has a malformed summary row at s=${row.s}`);
    }
    if (row.d !== summaries[0].d || row.n !== summaries[0].n) {
      throw new Error("sweep CSV mixes (d, n) pairs");
    }
  }
  summaries.sort((a, b) => a.s - b.s);
  return summaries;
}

export interface RankRow {
  d: number;
  n: number;
  s: number;
  seed: string;
  ranks: string[];
  extreme: boolean[];
}

/** Per-seed rank lists of a ranks file, in file order. */
export function rankRows(text: string): RankRow[] {
  const rows = parseCsv(text, RANKS_COLUMNS, "ranks");
  if (rows.length === 0) {
    throw new Error("ranks CSV has no data rows");
  }
  return rows.map((row) => {
    const ranks = row.ranks.split("|");
    const extreme = row.extreme.split("|").map((flag) => flag === "true");
    if (ranks.length !== extreme.length) {
      throw new Error(
        `ranks CSV row for seed ${row.seed} has ${ranks.length} ranks ` +
          `but ${extreme.length} extremality flags`,
      );
    }
    for (const rank of ranks) {
      if (!Number.isInteger(Number(rank)) || rank === "") {
        throw new Error(
          `ranks CSV row for seed ${row.seed} has a malformed rank "${rank}"`,
        );
      }
    }
    return {
      d: Number(row.d),
      n: Number(row.n),
      s: Number(row.s),
      seed: row.seed,
      ranks,
      extreme,
    };
  });
}
