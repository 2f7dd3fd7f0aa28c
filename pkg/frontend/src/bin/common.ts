import { FigureKind, render } from "../figures.js";

/** Shared argv handling: `<script> input.csv [more.csv ...] output.svg`. */
export function runFigureCli(kind: FigureKind): void {
  const args = process.argv.slice(2);
  if (args.length < 2) {
    console.error(`usage: plot-${kind} <input.csv> [input2.csv ...] <output.svg>`);
    process.exit(2);
  }
  const output = args[args.length - 1];
  const inputs = args.slice(0, -1);
  try {
    render({ kind, inputs, output });
  } catch (err) {
    console.error(`${kind}: ${(err as Error).message}`);
    process.exit(1);
  }
  console.log(`wrote ${output}`);
}
