import { mkdtempSync, readFileSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { fileURLToPath } from "url";
import { describe, expect, it } from "vitest";

import { render } from "../src/figures.js";

const HEADER = "experiment,delta_over_g,time_over_T,value,ci,shots,n_trotter,run_index,seed,flags";

function tmp(): string {
  return mkdtempSync(join(tmpdir(), "figures-"));
}

function lambdaCsv(withCi: boolean, withSingular: boolean): string {
  const rows = [
    "# generated test",
    HEADER,
  ];
  const ci = withCi ? "0.05" : "";
  for (const [t, v] of [["0.0", "0.0"], ["0.25", "0.4"], ["0.5", "1.1"], ["0.75", "2.4"]]) {
    rows.push(`lambda,100000.0,${t},${v},${ci},1024,1,-1,7,summary`);
  }
  if (withSingular) {
    rows.push("lambda,100000.0,0.8,inf,,1024,1,-1,7,summary;singular");
  }
  rows.push(`lambda,100000.0,1.0,1.3,${ci},1024,1,-1,7,summary`);
  return rows.join("\n") + "\n";
}

function orderParameterCsv(points: [number, number][]): string {
  const rows = ["# generated test", HEADER];
  for (const [d, v] of points) {
    rows.push(`order-parameter,${d},,${v},,,1,0,7,`);
  }
  return rows.join("\n") + "\n";
}

describe("lambda figure", () => {
  it("draws error bars from the ci column", () => {
    const dir = tmp();
    const input = join(dir, "lam.csv");
    writeFileSync(input, lambdaCsv(true, false));
    const output = join(dir, "lam.svg");
    render({ kind: "lambda", inputs: [input], output });
    const svg = readFileSync(output, "utf8");
    expect(svg).toContain("<svg");
    expect(svg).toContain("polyline");
    expect(svg).not.toContain("stroke-dasharray=\"5,5\"");  // no singular marker
    const lineCount = (svg.match(/<line /g) ?? []).length;
    expect(lineCount).toBeGreaterThan(10);  // axes ticks plus bar caps
  });

  it("omits bars when the ci column is empty", () => {
    const dir = tmp();
    const input = join(dir, "lam.csv");
    writeFileSync(input, lambdaCsv(false, false));
    const withBars = join(dir, "bars.csv");
    writeFileSync(withBars, lambdaCsv(true, false));
    const out1 = join(dir, "a.svg");
    const out2 = join(dir, "b.svg");
    render({ kind: "lambda", inputs: [input], output: out1 });
    render({ kind: "lambda", inputs: [withBars], output: out2 });
    const bare = (readFileSync(out1, "utf8").match(/<line /g) ?? []).length;
    const barred = (readFileSync(out2, "utf8").match(/<line /g) ?? []).length;
    expect(barred).toBeGreaterThan(bare);
  });

  it("renders singular rows as a dashed vertical marker", () => {
    const dir = tmp();
    const input = join(dir, "lam.csv");
    writeFileSync(input, lambdaCsv(false, true));
    const output = join(dir, "lam.svg");
    render({ kind: "lambda", inputs: [input], output });
    const svg = readFileSync(output, "utf8");
    expect(svg).toContain('stroke-dasharray="5,5"');
  });

  it("does not mutate inputs and re-renders identically", () => {
    const dir = tmp();
    const input = join(dir, "lam.csv");
    writeFileSync(input, lambdaCsv(true, true));
    const before = readFileSync(input, "utf8");
    const out1 = join(dir, "a.svg");
    const out2 = join(dir, "b.svg");
    render({ kind: "lambda", inputs: [input], output: out1 });
    render({ kind: "lambda", inputs: [input], output: out2 });
    expect(readFileSync(input, "utf8")).toBe(before);
    expect(readFileSync(out1, "utf8")).toBe(readFileSync(out2, "utf8"));
  });

  it("names missing columns in the diagnostic", () => {
    const dir = tmp();
    const input = join(dir, "bad.csv");
    writeFileSync(input, "a,b\n1,2\n");
    expect(() => render({ kind: "lambda", inputs: [input], output: join(dir, "x.svg") }))
      .toThrow(/missing column\(s\).*time_over_T/);
  });
});

describe("order-parameter figure", () => {
  it("renders a log-x curve over eleven detuning points", () => {
    const dir = tmp();
    const points: [number, number][] = [];
    for (let e = -5; e <= 5; e++) {
      const d = 10 ** e;
      points.push([d, d < 0.1 ? 0.56 : d > 10 ? 1.15 : 0.8]);
    }
    const input = join(dir, "op.csv");
    writeFileSync(input, orderParameterCsv(points));
    const output = join(dir, "op.svg");
    render({ kind: "order-parameter", inputs: [input], output });
    const svg = readFileSync(output, "utf8");
    expect(svg).toContain("1e-5");
    expect(svg).toContain("1e5");
    expect((svg.match(/<circle /g) ?? []).length).toBe(11);
  });

  it("rejects nonpositive detunings on the log axis", () => {
    const dir = tmp();
    const input = join(dir, "op.csv");
    writeFileSync(input, orderParameterCsv([[0, 0.5], [1, 0.9]]));
    expect(() => render({
      kind: "order-parameter", inputs: [input], output: join(dir, "x.svg"),
    })).toThrow(/positive/);
  });
});

describe("gate-scaling figure", () => {
  it("reads L from the flags column", () => {
    const dir = tmp();
    const rows = ["# c", HEADER];
    for (const [l, v] of [[2, 216], [3, 404], [4, 592]]) {
      rows.push(`gate-scaling,,,${v},,,1,0,7,L=${l}`);
    }
    const input = join(dir, "g.csv");
    writeFileSync(input, rows.join("\n") + "\n");
    const output = join(dir, "g.svg");
    render({ kind: "gate-scaling", inputs: [input], output });
    const svg = readFileSync(output, "utf8");
    expect((svg.match(/<circle /g) ?? []).length).toBe(3);
    expect(svg).toContain("2-qubit gates per Trotter step");
  });

  it("diagnoses files without L flags", () => {
    const dir = tmp();
    const input = join(dir, "g.csv");
    writeFileSync(input, `${HEADER}\ngate-scaling,,,10,,,1,0,7,\n`);
    expect(() => render({
      kind: "gate-scaling", inputs: [input], output: join(dir, "x.svg"),
    })).toThrow(/no rows with an L=/);
  });
});

describe("golden CSVs from the simulation suite", () => {
  const fixtures = fileURLToPath(new URL("./fixtures", import.meta.url));

  it("renders all four figure kinds without error", () => {
    const dir = tmp();
    render({
      kind: "lambda",
      inputs: [join(fixtures, "lambda_vacuum_64shots.csv")],
      output: join(dir, "lambda.svg"),
    });
    render({
      kind: "variance",
      inputs: [join(fixtures, "variance_sv.csv")],
      output: join(dir, "variance.svg"),
    });
    render({
      kind: "order-parameter",
      inputs: [join(fixtures, "order_parameter_exact.csv")],
      output: join(dir, "op.svg"),
    });
    render({
      kind: "gate-scaling",
      inputs: [join(fixtures, "gate_scaling.csv")],
      output: join(dir, "gates.svg"),
    });
    for (const name of ["lambda.svg", "variance.svg", "op.svg", "gates.svg"]) {
      expect(readFileSync(join(dir, name), "utf8")).toContain("</svg>");
    }
  });

  it("marks the cusp singular rows with dashed verticals", () => {
    const dir = tmp();
    const output = join(dir, "lambda.svg");
    render({
      kind: "lambda",
      inputs: [join(fixtures, "lambda_vacuum_64shots.csv")],
      output,
    });
    const svg = readFileSync(output, "utf8");
    expect((svg.match(/stroke-dasharray="5,5"/g) ?? []).length).toBeGreaterThan(0);
  });

  it("shows the two order-parameter plateaus on a log axis", () => {
    const dir = tmp();
    const output = join(dir, "op.svg");
    render({
      kind: "order-parameter",
      inputs: [join(fixtures, "order_parameter_exact.csv")],
      output,
    });
    const svg = readFileSync(output, "utf8");
    expect(svg).toContain("1e-5");
    expect((svg.match(/<circle /g) ?? []).length).toBe(11);
  });
});

describe("variance figure", () => {
  it("overlays two detunings from one file", () => {
    const dir = tmp();
    const rows = ["# c", HEADER];
    for (const [t, v] of [[0.0, 0.0], [0.5, 0.8], [1.0, 0.4]]) {
      rows.push(`variance,1e-05,${t},${v},,,1,0,7,`);
    }
    for (const [t, v] of [[0.0, 0.0], [0.5, 1.9], [1.0, 1.0]]) {
      rows.push(`variance,100000.0,${t},${v},,,1,0,7,`);
    }
    const input = join(dir, "v.csv");
    writeFileSync(input, rows.join("\n") + "\n");
    const output = join(dir, "v.svg");
    render({ kind: "variance", inputs: [input], output });
    const svg = readFileSync(output, "utf8");
    expect((svg.match(/<polyline /g) ?? []).length).toBe(2);
    expect(svg).toContain("Δ/g=1e-05");
    expect(svg).toContain("Δ/g=100000.0");
  });
});
