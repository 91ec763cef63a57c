/**
 * The three report panels, each a pure function from CSV text to SVG text.
 *
 * fig1-left:  mean success draw counts per set size, std error bars, and the
 *             theoretical step curve they sit on.
 * fig1-right: failure rates with standard-error bars under the tolerance
 *             reference line.
 * fig2:       the stopping-rule weight ratio per target size on a
 *             log-scaled vertical axis.
 *
 * All statistics arrive precomputed in the CSVs; the only numeric work here
 * is mapping values to pixels (and decade labels for the log axis).
 */

import { column, parseCsv } from "./csv";
import * as svg from "./svg";

export const PANELS = ["fig1-left", "fig1-right", "fig2"] as const;
export type Panel = (typeof PANELS)[number];

export const FIG1_COLUMNS = [
  "n", "k", "theoretical_samples", "mean_samples_success", "std_samples_success",
  "failure_rate", "failure_stderr", "exact_failure", "runs", "seed",
];
export const FIG2_COLUMNS = ["m", "n", "tau", "log10_rho"];

export interface RenderOptions {
  epsilon?: number;
}

export function renderPanel(panel: Panel, csvText: string, options: RenderOptions = {}): string {
  switch (panel) {
    case "fig1-left":
      return renderFig1Left(csvText);
    case "fig1-right":
      return renderFig1Right(csvText, options.epsilon ?? 0.01);
    case "fig2":
      return renderFig2(csvText);
    default:
      throw new Error(`unknown panel: ${panel}`);
  }
}

function renderFig1Left(csvText: string): string {
  const table = parseCsv(csvText, FIG1_COLUMNS);
  const n = column(table, "n");
  const mean = column(table, "mean_samples_success");
  const std = column(table, "std_samples_success");
  const theory = column(table, "theoretical_samples");

  const highs = n.map((_, i) => Math.max(mean[i] + std[i], theory[i]));
  const f = svg.frame(
    [Math.min(...n), Math.max(...n)],
    [0, Math.max(...highs) * 1.08],
  );

  // Theoretical cost as a step curve: constant until the next sampled size.
  let path = `M ${svg.fmt(f.x(n[0]))} ${svg.fmt(f.y(theory[0]))}`;
  for (let i = 1; i < n.length; i++) {
    path += ` H ${svg.fmt(f.x(n[i]))}`;
    if (theory[i] !== theory[i - 1]) {
      path += ` V ${svg.fmt(f.y(theory[i]))}`;
    }
  }
  f.parts.push(svg.el("path", {
    d: path, fill: "none", stroke: "#246", "stroke-width": 1.5, class: "step-curve",
  }));

  for (let i = 0; i < n.length; i++) {
    if (std[i] > 0) {
      f.parts.push(svg.errorBar(f, n[i], mean[i] - std[i], mean[i] + std[i], "error-bar"));
    }
    f.parts.push(svg.marker(f, n[i], mean[i], "marker"));
  }

  svg.xAxis(f, "set size n", svg.ticks(f.x.domain[0], f.x.domain[1], 8));
  svg.yAxis(f, "draws in success runs", svg.ticks(0, f.y.domain[1], 7));
  f.parts.push(title("success draw counts: observed vs theoretical"));
  return svg.document(f.parts, { class: "fig1-left" });
}

function renderFig1Right(csvText: string, epsilon: number): string {
  const table = parseCsv(csvText, FIG1_COLUMNS);
  const n = column(table, "n");
  const rate = column(table, "failure_rate");
  const stderr = column(table, "failure_stderr");

  const top = Math.max(epsilon * 1.25, ...rate.map((r, i) => r + stderr[i])) * 1.1;
  const f = svg.frame([Math.min(...n), Math.max(...n)], [0, top]);

  const epsY = svg.fmt(f.y(epsilon));
  f.parts.push(svg.el("line", {
    x1: svg.MARGIN.left, y1: epsY, x2: svg.WIDTH - svg.MARGIN.right, y2: epsY,
    stroke: "#246", "stroke-width": 1.5, class: "epsilon-line",
  }));
  f.parts.push(svg.el("text", {
    x: svg.WIDTH - svg.MARGIN.right - 4, y: Number(epsY) - 6,
    "text-anchor": "end", "font-size": 12, fill: "#246", class: "epsilon-label",
  }, `tolerance = ${svg.fmt(epsilon)}`));

  for (let i = 0; i < n.length; i++) {
    if (stderr[i] > 0) {
      f.parts.push(svg.errorBar(
        f, n[i], Math.max(rate[i] - stderr[i], 0), rate[i] + stderr[i], "error-bar",
      ));
    }
    f.parts.push(svg.marker(f, n[i], rate[i], "marker"));
  }

  svg.xAxis(f, "set size n", svg.ticks(f.x.domain[0], f.x.domain[1], 8));
  svg.yAxis(f, "failure rate", svg.ticks(0, top, 6));
  f.parts.push(title("failure rates under the tolerance"));
  return svg.document(f.parts, { class: "fig1-right" });
}

function renderFig2(csvText: string): string {
  const table = parseCsv(csvText, FIG2_COLUMNS);
  const m = column(table, "m");
  const log10rho = column(table, "log10_rho");

  // The vertical axis shows rho itself on a log scale, which is a linear
  // axis in log10(rho) with decade tick labels.
  const low = Math.min(...log10rho);
  const floor = low < 0 ? Math.floor(low / 10) * 10 : -1;
  const f = svg.frame([Math.min(...m), Math.max(...m)], [floor, 0]);

  const decadeStep = Math.max(1, Math.ceil(-floor / 6));
  const decades: number[] = [];
  for (let d = 0; d >= floor; d -= decadeStep) {
    decades.push(d);
  }

  const points = m.map((v, i) => `${svg.fmt(f.x(v))},${svg.fmt(f.y(log10rho[i]))}`);
  f.parts.push(svg.el("polyline", {
    points: points.join(" "), fill: "none", stroke: "#246",
    "stroke-width": 1.5, class: "rho-curve",
  }));
  for (let i = 0; i < m.length; i++) {
    f.parts.push(svg.marker(f, m[i], log10rho[i], "marker"));
  }

  svg.xAxis(f, "target size m", svg.ticks(f.x.domain[0], f.x.domain[1], 8));
  svg.yAxis(f, "weight ratio (log scale)", decades, (d) => `1e${d}`);
  f.parts.push(title("tightness of the stopping rule"));
  return svg.document(f.parts, { class: "fig2", "data-y-scale": "log10" });
}

function title(text: string): string {
  return svg.el("text", {
    x: svg.WIDTH / 2, y: 18, "text-anchor": "middle",
    "font-size": 14, class: "title",
  }, text);
}
