/**
 * Per-seed rank scatter from a ranks CSV: one column of points per seed (in
 * file order), one point per decomposition step, y = the recorded numerical
 * rank, integer y-ticks, fill keyed to the extremality verdict.  Each point
 * carries its seed and exact rank string as data attributes.
 */

import { rankRows } from "./csv.js";
import {
  HEIGHT, MARGIN, WIDTH, coord, esc, frame, linearScale, openSvg,
  title, xLabel, xTick, yLabel, yTick,
} from "./svg.js";

const EXTREME_COLOR = "#1f77b4";
const NOT_EXTREME_COLOR = "#d62728";

export function renderRankScatter(csvText: string, plotTitle?: string): string {
  const rows = rankRows(csvText);
  const { d, n, s } = rows[0];
  const maxRank = Math.max(
    1,
    ...rows.flatMap((row) => row.ranks.map(Number)),
  );

  const x = linearScale(-0.5, rows.length - 0.5, MARGIN.left, WIDTH - MARGIN.right);
  const y = linearScale(0, maxRank + 1, HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [
    openSvg("rank-scatter"),
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    title(plotTitle ?? `step ranks per seed (d=${d}, n=${n}, s=${s})`),
    frame(),
    xLabel("seed"),
    yLabel("numerical rank"),
  ];

  const seedStep = Math.max(1, Math.ceil(rows.length / 25));
  rows.forEach((row, index) => {
    if (index % seedStep === 0) {
      parts.push(xTick(x(index), row.seed));
    }
  });
  const tickStep = Math.max(1, Math.ceil(maxRank / 12));
  for (let rank = 0; rank <= maxRank + 1; rank += tickStep) {
    parts.push(yTick(y(rank), String(rank)));
  }

  rows.forEach((row, index) => {
    row.ranks.forEach((rank, step) => {
      const color = row.extreme[step] ? EXTREME_COLOR : NOT_EXTREME_COLOR;
      parts.push(
        `<circle class="point" cx="${coord(x(index))}" ` +
          `cy="${coord(y(Number(rank)))}" r="4" fill="${color}" ` +
          `fill-opacity="0.75" data-seed="${esc(row.seed)}" ` +
          `data-rank="${esc(rank)}"/>`,
      );
    });
  });

  const legendX = WIDTH - MARGIN.right - 130;
  const legend = [
    { label: "extreme", color: EXTREME_COLOR },
    { label: "not extreme", color: NOT_EXTREME_COLOR },
  ];
  legend.forEach((entry, index) => {
    const legendY = MARGIN.top + 14 + 16 * index;
    parts.push(
      `<circle cx="${legendX + 6}" cy="${legendY - 4}" r="4" ` +
        `fill="${entry.color}" fill-opacity="0.75"/>`,
      `<text x="${legendX + 18}" y="${legendY}" font-size="11">` +
        `${esc(entry.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
