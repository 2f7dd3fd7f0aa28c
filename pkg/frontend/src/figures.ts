/**
 * Standard figures of the phase-transition experiments, from result CSVs.
 *
 * Figures recompute nothing: every value plotted is a CSV cell. Singular
 * overlap rows (value "inf", flag "singular") cannot be placed on the y
 * axis; they become a dashed vertical marker at their time, matching how
 * singular cusps are conventionally indicated.
 */
import { basename } from "path";
import { writeFileSync } from "fs";

import { isSingular, num, preferSummaries, readCsv, requireColumns, Table } from "./csv.js";
import { extent, linearScale, logScale, padded, Scale } from "./scale.js";
import {
  HEIGHT, MARGIN, PALETTE, WIDTH,
  axes, circle, document as svgDocument, errorBar, legend, polyline, vline,
} from "./svg.js";

export type FigureKind = "lambda" | "variance" | "order-parameter" | "gate-scaling";

export interface FigureSpec {
  kind: FigureKind;
  inputs: string[];
  output: string;
}

interface Series {
  label: string;
  points: { x: number; y: number; ci: number }[];
  singularXs: number[];
}

const PLOT_X: [number, number] = [MARGIN.left, WIDTH - MARGIN.right];
const PLOT_Y: [number, number] = [HEIGHT - MARGIN.bottom, MARGIN.top];

export function render(spec: FigureSpec): void {
  const tables = spec.inputs.map((path) => ({ path, table: readCsv(path) }));
  let svg: string;
  switch (spec.kind) {
    case "lambda":
      svg = renderTrajectories(tables, "Λ(t)", "t / T");
      break;
    case "variance":
      svg = renderTrajectories(tables, "δN²(t)", "t / T");
      break;
    case "order-parameter":
      svg = renderOrderParameter(tables);
      break;
    case "gate-scaling":
      svg = renderGateScaling(tables);
      break;
    default:
      throw new Error(`unknown figure kind ${spec.kind as string}`);
  }
  writeFileSync(spec.output, svg);
}

function stem(path: string): string {
  return basename(path).replace(/\.csv$/i, "");
}

function trajectorySeries(path: string, table: Table): Series[] {
  requireColumns(table, ["delta_over_g", "time_over_T", "value", "ci", "flags",
    "run_index"], path);
  const rows = preferSummaries(table.rows);
  const byDetuning = new Map<string, Series>();
  for (const row of rows) {
    const key = row.delta_over_g;
    if (!byDetuning.has(key)) {
      byDetuning.set(key, {
        label: `${stem(path)} Δ/g=${key}`,
        points: [], singularXs: [],
      });
    }
    const series = byDetuning.get(key)!;
    const x = num(row.time_over_T);
    const y = num(row.value);
    if (isSingular(row) || !Number.isFinite(y)) {
      series.singularXs.push(x);
    } else {
      series.points.push({ x, y, ci: num(row.ci) });
    }
  }
  return [...byDetuning.values()];
}

function renderTrajectories(
  tables: { path: string; table: Table }[], yLabel: string, xLabel: string,
): string {
  const allSeries = tables.flatMap(({ path, table }) => trajectorySeries(path, table));
  const xs = allSeries.flatMap((s) => [...s.points.map((p) => p.x), ...s.singularXs]);
  const ys = allSeries.flatMap((s) => s.points.map((p) => p.y));
  const xScale = linearScale(extent(xs), PLOT_X);
  const yScale = linearScale(padded(extent(ys)), PLOT_Y);
  const body: string[] = [axes(xScale, yScale, xLabel, yLabel)];
  allSeries.forEach((series, i) => {
    const color = PALETTE[i % PALETTE.length];
    body.push(drawSeries(series, xScale, yScale, color));
  });
  body.push(legend(allSeries.map((s, i) => ({
    label: s.label, color: PALETTE[i % PALETTE.length],
  }))));
  return svgDocument(body.join(""), yLabel);
}

function drawSeries(series: Series, xScale: Scale, yScale: Scale, color: string): string {
  const parts: string[] = [];
  if (series.points.length > 1) {
    parts.push(polyline(
      series.points.map((p) => [xScale(p.x), yScale(p.y)] as [number, number]),
      color));
  }
  for (const p of series.points) {
    const px = xScale(p.x);
    parts.push(circle(px, yScale(p.y), color));
    if (Number.isFinite(p.ci) && p.ci > 0) {
      parts.push(errorBar(px, yScale(p.y - p.ci), yScale(p.y + p.ci), color));
    }
  }
  // singular rows: a dashed vertical marker at the cusp position
  for (const x of series.singularXs) {
    parts.push(vline(xScale(x), PLOT_Y[0], PLOT_Y[1], color));
  }
  return parts.join("");
}

function renderOrderParameter(tables: { path: string; table: Table }[]): string {
  const series: Series[] = tables.map(({ path, table }) => {
    requireColumns(table, ["delta_over_g", "value"], path);
    const rows = preferSummaries(table.rows);
    const points = rows
      .map((r) => ({ x: num(r.delta_over_g), y: num(r.value), ci: num(r.ci ?? "") }))
      .filter((p) => Number.isFinite(p.y))
      .sort((a, b) => a.x - b.x);
    const bad = points.find((p) => !(p.x > 0));
    if (bad) throw new Error(`${path}: log-scale detuning must be positive`);
    return { label: stem(path), points, singularXs: [] };
  });
  const xScale = logScale(extent(series.flatMap((s) => s.points.map((p) => p.x))), PLOT_X);
  const yScale = linearScale(
    padded(extent(series.flatMap((s) => s.points.map((p) => p.y)))), PLOT_Y);
  const body = [axes(xScale, yScale, "Δ/g", "order parameter")];
  series.forEach((s, i) => body.push(drawSeries(s, xScale, yScale, PALETTE[i % PALETTE.length])));
  body.push(legend(series.map((s, i) => ({ label: s.label, color: PALETTE[i % PALETTE.length] }))));
  return svgDocument(body.join(""), "order parameter vs detuning");
}

function renderGateScaling(tables: { path: string; table: Table }[]): string {
  const series: Series[] = tables.map(({ path, table }) => {
    requireColumns(table, ["value", "flags"], path);
    const points = table.rows
      .map((r) => {
        const match = /(?:^|[,;])L=(\d+)/.exec(`,${r.flags}`);
        return match ? { x: Number(match[1]), y: num(r.value), ci: NaN } : null;
      })
      .filter((p): p is { x: number; y: number; ci: number } => p !== null)
      .sort((a, b) => a.x - b.x);
    if (points.length === 0) {
      throw new Error(`${path}: no rows with an L=<n> flag`);
    }
    return { label: stem(path), points, singularXs: [] };
  });
  const xScale = linearScale(extent(series.flatMap((s) => s.points.map((p) => p.x))), PLOT_X);
  const yScale = linearScale(
    padded(extent(series.flatMap((s) => s.points.map((p) => p.y)))), PLOT_Y);
  const body = [axes(xScale, yScale, "cavities L", "2-qubit gates per Trotter step")];
  series.forEach((s, i) => body.push(drawSeries(s, xScale, yScale, PALETTE[i % PALETTE.length])));
  body.push(legend(series.map((s, i) => ({ label: s.label, color: PALETTE[i % PALETTE.length] }))));
  return svgDocument(body.join(""), "2-qubit gate scaling");
}
