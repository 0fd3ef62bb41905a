/**
 * plot --kind error-curve|rank-scatter --input file.csv --out file.svg
 *      [--title ...]
 *
 * Exit codes match the decomposition CLI: 0 success, 1 failed check (bad or
 * mismatched data), 2 usage error (bad flags, unreadable input).
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { renderErrorCurve } from "./errorCurve.js";
import { renderRankScatter } from "./rankScatter.js";

const USAGE =
  "usage: plot --kind error-curve|rank-scatter --input file.csv " +
  "--out file.svg [--title ...]";

const RENDERERS: Record<string, (csv: string, title?: string) => string> = {
  "error-curve": renderErrorCurve,
  "rank-scatter": renderRankScatter,
};

export function main(argv: string[]): number {
  let values: {
    kind?: string;
    input?: string;
    out?: string;
    title?: string;
  };
  try {
    values = parseArgs({
      args: argv,
      options: {
        kind: { type: "string" },
        input: { type: "string" },
        out: { type: "string" },
        title: { type: "string" },
      },
      strict: true,
    }).values;
  } catch (error) {
    console.error(`plot: error: ${(error as Error).message}\n${USAGE}`);
    return 2;
  }

  const { kind, input, out } = values;
  if (!kind || !input || !out) {
    console.error(`plot: error: --kind, --input, --out are required\n${USAGE}`);
    return 2;
  }
  const render = RENDERERS[kind];
  if (!render) {
    console.error(`plot: error: unknown kind "${kind}"\n${USAGE}`);
    return 2;
  }

  let text: string;
  try {
    text = readFileSync(input, "utf8");
  } catch (error) {
    console.error(`plot: error: ${(error as Error).message}`);
    return 2;
  }

  try {
    writeFileSync(out, render(text, values.title));
  } catch (error) {
    console.error(`plot: error: ${(error as Error).message}`);
    return 1;
  }
  return 0;
}
