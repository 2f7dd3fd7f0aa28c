/** Minimal SVG string assembly: enough for line/marker plots with axes. */
import type { Scale } from "./scale.js";
import { formatTick } from "./scale.js";

export const WIDTH = 640;
export const HEIGHT = 420;
export const MARGIN = { top: 28, right: 24, bottom: 46, left: 64 };

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
  "#9467bd", "#8c564b", "#17becf", "#7f7f7f"];

export function el(tag: string, attrs: Record<string, string | number>, body = ""): string {
  const a = Object.entries(attrs)
    .map(([k, v]) => `${k}="${v}"`)
    .join(" ");
  return body === "" ? `<${tag} ${a}/>` : `<${tag} ${a}>${body}</${tag}>`;
}

export function text(x: number, y: number, s: string, anchor = "middle", size = 12): string {
  return el("text", {
    x: round(x), y: round(y), "text-anchor": anchor, "font-size": size,
    "font-family": "sans-serif", fill: "#222",
  }, escapeXml(s));
}

export function polyline(points: [number, number][], stroke: string, dashed = false): string {
  const attrs: Record<string, string | number> = {
    points: points.map(([x, y]) => `${round(x)},${round(y)}`).join(" "),
    fill: "none", stroke, "stroke-width": 1.5,
  };
  if (dashed) attrs["stroke-dasharray"] = "6,4";
  return el("polyline", attrs);
}

export function circle(x: number, y: number, color: string, r = 3): string {
  return el("circle", { cx: round(x), cy: round(y), r, fill: color });
}

export function vline(x: number, y0: number, y1: number, color: string, dashed = true): string {
  return el("line", {
    x1: round(x), x2: round(x), y1: round(y0), y2: round(y1),
    stroke: color, "stroke-width": 1.2,
    ...(dashed ? { "stroke-dasharray": "5,5" } : {}),
  });
}

export function errorBar(x: number, yLo: number, yHi: number, color: string): string {
  const cap = 3;
  return [
    el("line", { x1: round(x), x2: round(x), y1: round(yLo), y2: round(yHi), stroke: color, "stroke-width": 1 }),
    el("line", { x1: round(x - cap), x2: round(x + cap), y1: round(yLo), y2: round(yLo), stroke: color, "stroke-width": 1 }),
    el("line", { x1: round(x - cap), x2: round(x + cap), y1: round(yHi), y2: round(yHi), stroke: color, "stroke-width": 1 }),
  ].join("");
}

export function axes(xScale: Scale, yScale: Scale, xLabel: string, yLabel: string): string {
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  const parts: string[] = [
    el("line", { x1: x0, x2: x1, y1: y0, y2: y0, stroke: "#000" }),
    el("line", { x1: x0, x2: x0, y1: y0, y2: y1, stroke: "#000" }),
  ];
  for (const t of xScale.ticks()) {
    const px = xScale(t);
    parts.push(el("line", { x1: round(px), x2: round(px), y1: y0, y2: y0 + 5, stroke: "#000" }));
    parts.push(text(px, y0 + 18, formatTick(t)));
  }
  for (const t of yScale.ticks()) {
    const py = yScale(t);
    parts.push(el("line", { x1: x0 - 5, x2: x0, y1: round(py), y2: round(py), stroke: "#000" }));
    parts.push(text(x0 - 8, py + 4, formatTick(t), "end"));
  }
  parts.push(text((x0 + x1) / 2, HEIGHT - 10, xLabel));
  parts.push(el("g", { transform: `rotate(-90 16 ${(y0 + y1) / 2})` },
    text(16, (y0 + y1) / 2, yLabel)));
  return parts.join("");
}

export function legend(entries: { label: string; color: string }[]): string {
  return entries
    .map(({ label, color }, i) => {
      const y = MARGIN.top + 6 + 16 * i;
      const x = WIDTH - MARGIN.right - 150;
      return el("rect", { x, y: y - 8, width: 12, height: 3, fill: color })
        + text(x + 18, y, label, "start", 11);
    })
    .join("");
}

export function document(body: string, title: string): string {
  return `<?xml version="1.0" encoding="UTF-8"?>\n` +
    el("svg", {
      xmlns: "http://www.w3.org/2000/svg", width: WIDTH, height: HEIGHT,
      viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    }, el("rect", { x: 0, y: 0, width: WIDTH, height: HEIGHT, fill: "#fff" })
      + text(WIDTH / 2, 18, title, "middle", 14) + body) + "\n";
}

function round(v: number): number {
  return Math.round(v * 100) / 100;
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
