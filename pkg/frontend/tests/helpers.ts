import { expect } from "vitest";

/** Tag-balance well-formedness check, enough for generated SVG text. */
export function assertWellFormed(svg: string): void {
  expect(svg.startsWith("<svg")).toBe(true);
  expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
  const stack: string[] = [];
  const tag = /<(\/?)([a-zA-Z][\w-]*)((?:"[^"]*"|\/(?!>)|[^">/])*)(\/?)>/g;
  let match: RegExpExecArray | null;
  let cursor = 0;
  while ((match = tag.exec(svg)) !== null) {
    const between = svg.slice(cursor, match.index);
    expect(between.includes("<"), `stray "<" in text: ${between}`).toBe(false);
    cursor = tag.lastIndex;
    const [, closing, name, , selfClosing] = match;
    if (closing) {
      expect(stack.pop()).toBe(name);
    } else if (!selfClosing) {
      stack.push(name);
    }
  }
  expect(stack).toEqual([]);
}

/** All attribute maps of elements matching the tag and class. */
export function elements(
  svg: string,
  tagName: string,
  className?: string,
): Record<string, string>[] {
  const out: Record<string, string>[] = [];
  const tag = new RegExp(`<${tagName}((?:"[^"]*"|[^">])*)/?>`, "g");
  const attr = /([\w-]+)="([^"]*)"/g;
  let match: RegExpExecArray | null;
  while ((match = tag.exec(svg)) !== null) {
    const attrs: Record<string, string> = {};
    let pair: RegExpExecArray | null;
    attr.lastIndex = 0;
    while ((pair = attr.exec(match[1])) !== null) {
      attrs[pair[1]] = pair[2];
    }
    if (!className || (attrs.class ?? "").split(" ").includes(className)) {
      out.push(attrs);
    }
  }
  return out;
}

/** Text content of every <text> element with the given class. */
export function textContents(svg: string, className: string): string[] {
  const out: string[] = [];
  const tag = new RegExp(
    `<text((?:"[^"]*"|[^">])*class="[^"]*${className}[^"]*"[^>]*)>([^<]*)</text>`,
    "g",
  );
  let match: RegExpExecArray | null;
  while ((match = tag.exec(svg)) !== null) {
    out.push(match[2]);
  }
  return out;
}
