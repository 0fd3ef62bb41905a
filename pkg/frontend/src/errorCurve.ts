/**
 * Error-vs-s curve from a sweep CSV: the per-s summary rows give two curves
 * (mean weight error, mean atom error) with a dashed vertical marker at the
 * closed-form atom bound.  Every plotted value is carried verbatim in
 * data-s / data-value attributes next to its screen coordinates.
 */

import { theoreticalAtomBound } from "./bound.js";
import { sweepSummaries } from "./csv.js";
import {
  HEIGHT, MARGIN, WIDTH, coord, esc, frame, linearScale, openSvg,
  title, xLabel, xTick, yLabel, yTick,
} from "./svg.js";

const Y_MAX = 1.05;
const SERIES = [
  { key: "eW", cls: "e-w", label: "mean e_w", color: "#1f77b4" },
  { key: "eZ", cls: "e-z", label: "mean e_z", color: "#d62728" },
] as const;

export function renderErrorCurve(csvText: string, plotTitle?: string): string {
  const summaries = sweepSummaries(csvText);
  const { d, n } = summaries[0];
  const bound = theoreticalAtomBound(n, d);

  const sValues = summaries.map((row) => row.s);
  const sMin = Math.min(bound, ...sValues);
  const sMax = Math.max(bound, ...sValues);
  const x = linearScale(sMin - 0.5, sMax + 0.5, MARGIN.left, WIDTH - MARGIN.right);
  const y = linearScale(0, Y_MAX, HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [
    openSvg("error-curve", ` data-y-domain="0 ${Y_MAX}"`),
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    title(plotTitle ?? `recovery error vs atom count (d=${d}, n=${n})`),
    frame(),
    xLabel("s (planted atoms)"),
    yLabel("mean recovery error"),
  ];

  for (let s = sMin; s <= sMax; s += 1) {
    parts.push(xTick(x(s), String(s)));
  }
  for (let tick = 0; tick <= 5; tick += 1) {
    const value = tick / 5;
    parts.push(yTick(y(value), value.toFixed(1)));
  }

  parts.push(
    `<line class="bound-marker" data-bound="${bound}" ` +
      `x1="${coord(x(bound))}" y1="${MARGIN.top}" ` +
      `x2="${coord(x(bound))}" y2="${HEIGHT - MARGIN.bottom}" ` +
      `stroke="#555" stroke-dasharray="4 3"/>`,
    `<text x="${coord(x(bound) + 4)}" y="${MARGIN.top + 12}" ` +
      `font-size="10" fill="#555">bound s=${bound}</text>`,
  );

  for (const series of SERIES) {
    const points = summaries
      .map((row) => `${coord(x(row.s))},${coord(y(Number(row[series.key])))}`)
      .join(" ");
    parts.push(
      `<polyline class="curve ${series.cls}" points="${points}" ` +
        `fill="none" stroke="${series.color}" stroke-width="1.5"/>`,
    );
    for (const row of summaries) {
      parts.push(
        `<circle class="point ${series.cls}" ` +
          `cx="${coord(x(row.s))}" cy="${coord(y(Number(row[series.key])))}" ` +
          `r="3.5" fill="${series.color}" ` +
          `data-s="${row.s}" data-value="${esc(row[series.key])}"/>`,
      );
    }
  }

  const legendX = WIDTH - MARGIN.right - 120;
  SERIES.forEach((series, index) => {
    const legendY = MARGIN.top + 14 + 16 * index;
    parts.push(
      `<line x1="${legendX}" y1="${legendY - 4}" x2="${legendX + 22}" ` +
        `y2="${legendY - 4}" stroke="${series.color}" stroke-width="1.5"/>`,
      `<text x="${legendX + 28}" y="${legendY}" font-size="11">` +
        `${esc(series.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
