export { theoreticalAtomBound } from "./bound.js";
export {
  RANKS_COLUMNS,
  SUMMARY_SEED,
  SWEEP_COLUMNS,
  parseCsv,
  rankRows,
  sweepSummaries,
} from "./csv.js";
export type { RankRow, Row, SweepSummary } from "./csv.js";
export { renderErrorCurve } from "./errorCurve.js";
export { renderRankScatter } from "./rankScatter.js";
export { main } from "./cli.js";
