/** Minimal SVG text assembly: linear scales, escaping, coordinate format. */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const WIDTH = 640;
export const HEIGHT = 420;
export const MARGIN: Margin = { top: 42, right: 24, bottom: 52, left: 64 };

export type Scale = (value: number) => number;

export function linearScale(
  d0: number,
  d1: number,
  r0: number,
  r1: number,
): Scale {
  const span = d1 - d0;
  if (span === 0) {
    return () => (r0 + r1) / 2;
  }
  return (value) => r0 + ((value - d0) / span) * (r1 - r0);
}

/** Coordinate formatting only; data values are emitted verbatim elsewhere. */
export function coord(value: number): string {
  return value.toFixed(2).replace(/\.?0+$/, "");
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function openSvg(kind: string, extra = ""): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" ` +
    `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
    `font-family="sans-serif" data-kind="${kind}"${extra}>`
  );
}

export function title(text: string): string {
  return (
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15">` +
    `${esc(text)}</text>`
  );
}

export function xLabel(text: string): string {
  return (
    `<text x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" ` +
    `y="${HEIGHT - 10}" text-anchor="middle" font-size="12">` +
    `${esc(text)}</text>`
  );
}

export function yLabel(text: string): string {
  const y = (MARGIN.top + HEIGHT - MARGIN.bottom) / 2;
  return (
    `<text x="16" y="${y}" text-anchor="middle" font-size="12" ` +
    `transform="rotate(-90 16 ${y})">${esc(text)}</text>`
  );
}

export function frame(): string {
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = MARGIN.top;
  const y1 = HEIGHT - MARGIN.bottom;
  return (
    `<rect x="${x0}" y="${y0}" width="${x1 - x0}" height="${y1 - y0}" ` +
    `fill="none" stroke="#333" stroke-width="1"/>`
  );
}

export function xTick(x: number, label: string): string {
  const y1 = HEIGHT - MARGIN.bottom;
  return (
    `<line x1="${coord(x)}" y1="${y1}" x2="${coord(x)}" y2="${y1 + 5}" ` +
    `stroke="#333"/>` +
    `<text x="${coord(x)}" y="${y1 + 18}" text-anchor="middle" ` +
    `font-size="10" class="x-tick">${esc(label)}</text>`
  );
}

export function yTick(y: number, label: string): string {
  const x0 = MARGIN.left;
  return (
    `<line x1="${x0 - 5}" y1="${coord(y)}" x2="${x0}" y2="${coord(y)}" ` +
    `stroke="#333"/>` +
    `<text x="${x0 - 8}" y="${coord(y + 3)}" text-anchor="end" ` +
    `font-size="10" class="y-tick">${esc(label)}</text>`
  );
}
