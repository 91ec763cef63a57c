/**
 * Minimal deterministic SVG assembly: fixed canvas, linear pixel scales,
 * numeric formatting that never depends on locale.
 */

export const WIDTH = 640;
export const HEIGHT = 420;
export const MARGIN = { top: 28, right: 24, bottom: 48, left: 76 };

export interface Scale {
  (value: number): number;
  domain: [number, number];
}

export function fmt(value: number): string {
  if (!Number.isFinite(value)) return String(value);
  const rounded = Number(value.toPrecision(6));
  return String(rounded);
}

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = [d0, d1];
  return scale;
}

export function ticks(d0: number, d1: number, count: number): number[] {
  const span = d1 - d0;
  if (span <= 0) return [d0];
  const rawStep = span / Math.max(count - 1, 1);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 5, 10].map((m) => m * power);
  const step = candidates.find((s) => span / s <= count) ?? candidates[3];
  const start = Math.ceil(d0 / step) * step;
  const out: number[] = [];
  for (let v = start; v <= d1 + step * 1e-9; v += step) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

export function el(tag: string, attrs: Record<string, string | number>, body = ""): string {
  const rendered = Object.entries(attrs)
    .map(([key, value]) => `${key}="${value}"`)
    .join(" ");
  return body === "" ? `<${tag} ${rendered}/>` : `<${tag} ${rendered}>${body}</${tag}>`;
}

export interface Frame {
  x: Scale;
  y: Scale;
  parts: string[];
}

export function frame(xDomain: [number, number], yDomain: [number, number]): Frame {
  const x = linearScale(xDomain[0], xDomain[1], MARGIN.left, WIDTH - MARGIN.right);
  const y = linearScale(yDomain[0], yDomain[1], HEIGHT - MARGIN.bottom, MARGIN.top);
  const parts = [
    el("rect", {
      x: MARGIN.left, y: MARGIN.top,
      width: WIDTH - MARGIN.left - MARGIN.right,
      height: HEIGHT - MARGIN.top - MARGIN.bottom,
      fill: "none", stroke: "#222", "stroke-width": 1, class: "plot-frame",
    }),
  ];
  return { x, y, parts };
}

export function xAxis(f: Frame, label: string, tickValues: number[],
                      format: (v: number) => string = fmt): void {
  const y0 = HEIGHT - MARGIN.bottom;
  for (const v of tickValues) {
    const px = f.x(v);
    f.parts.push(el("line", { x1: px, y1: y0, x2: px, y2: y0 + 5, stroke: "#222", class: "x-tick" }));
    f.parts.push(el("text", {
      x: px, y: y0 + 20, "text-anchor": "middle", "font-size": 12, class: "x-tick-label",
    }, format(v)));
  }
  f.parts.push(el("text", {
    x: (MARGIN.left + WIDTH - MARGIN.right) / 2, y: HEIGHT - 10,
    "text-anchor": "middle", "font-size": 13, class: "x-label",
  }, label));
}

export function yAxis(f: Frame, label: string, tickValues: number[],
                      format: (v: number) => string = fmt): void {
  const x0 = MARGIN.left;
  for (const v of tickValues) {
    const py = f.y(v);
    f.parts.push(el("line", { x1: x0 - 5, y1: py, x2: x0, y2: py, stroke: "#222", class: "y-tick" }));
    f.parts.push(el("text", {
      x: x0 - 8, y: py + 4, "text-anchor": "end", "font-size": 12, class: "y-tick-label",
    }, format(v)));
  }
  f.parts.push(el("text", {
    x: 18, y: (MARGIN.top + HEIGHT - MARGIN.bottom) / 2,
    "text-anchor": "middle", "font-size": 13, class: "y-label",
    transform: `rotate(-90 18 ${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2})`,
  }, label));
}

export function errorBar(f: Frame, x: number, low: number, high: number, cls: string): string {
  const px = f.x(x);
  const cap = 4;
  return [
    el("line", { x1: px, y1: f.y(low), x2: px, y2: f.y(high), stroke: "#c22", class: cls }),
    el("line", { x1: px - cap, y1: f.y(low), x2: px + cap, y2: f.y(low), stroke: "#c22", class: cls }),
    el("line", { x1: px - cap, y1: f.y(high), x2: px + cap, y2: f.y(high), stroke: "#c22", class: cls }),
  ].join("");
}

export function marker(f: Frame, x: number, y: number, cls: string): string {
  return el("circle", {
    cx: fmt(f.x(x)), cy: fmt(f.y(y)), r: 3.5,
    fill: "none", stroke: "#c22", "stroke-width": 1.5, class: cls,
  });
}

export function document(parts: string[], attrs: Record<string, string | number> = {}): string {
  const head =
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif"` +
    Object.entries(attrs).map(([k, v]) => ` ${k}="${v}"`).join("") +
    ">";
  return `${head}\n${parts.join("\n")}\n</svg>\n`;
}
