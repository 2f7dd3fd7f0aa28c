/**
 * Reader for the jchsim result CSVs.
 *
 * Layout: optional leading `#` comment lines, a header row, then plain
 * comma-separated cells (no quoting is ever emitted). Singular overlap
 * rows carry the literal cell "inf" plus a "singular" flag.
 */
import { readFileSync } from "fs";

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

export function parseCsv(text: string): Table {
  const lines = text
    .split(/\r?\n/)
    .filter((line) => line.length > 0 && !line.startsWith("#"));
  if (lines.length === 0) throw new Error("empty CSV: no header row");
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((line) => {
    const cells = line.split(",");
    const row: Record<string, string> = {};
    columns.forEach((c, i) => (row[c] = cells[i] ?? ""));
    return row;
  });
  return { columns, rows };
}

export function readCsv(path: string): Table {
  return parseCsv(readFileSync(path, "utf8"));
}

/** Throw a diagnostic naming each column the figure needs but the CSV lacks. */
export function requireColumns(table: Table, needed: string[], path: string): void {
  const missing = needed.filter((c) => !table.columns.includes(c));
  if (missing.length > 0) {
    throw new Error(`${path}: missing column(s) ${missing.join(", ")}`);
  }
}

export function num(cell: string): number {
  if (cell === "inf") return Infinity;
  if (cell === "") return NaN;
  return Number(cell);
}

export function isSingular(row: Record<string, string>): boolean {
  return (row.flags ?? "").split(/[,;]/).includes("singular");
}

/** Prefer summary rows (run_index -1) when a file carries per-run rows too. */
export function preferSummaries(rows: Record<string, string>[]): Record<string, string>[] {
  const summaries = rows.filter((r) => r.run_index === "-1");
  return summaries.length > 0 ? summaries : rows.filter((r) => r.run_index !== "-1");
}
