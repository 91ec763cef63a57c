/**
 * Strict CSV access for the experiment reports.
 *
 * The producers write plain comma-separated rows with a fixed header and no
 * quoting, so parsing is exact splitting; any deviation from the expected
 * schema is an error naming the offending column.
 */

export class CsvError extends Error {}

export interface Table {
  columns: string[];
  rows: number[][];
}

export function parseCsv(text: string, requiredColumns: string[]): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvError("empty file: no header row");
  }
  const columns = lines[0].split(",");
  const missing = requiredColumns.filter((c) => !columns.includes(c));
  if (missing.length > 0) {
    throw new CsvError(`missing column(s): ${missing.join(", ")}`);
  }
  if (columns.length !== requiredColumns.length ||
      requiredColumns.some((c, i) => columns[i] !== c)) {
    throw new CsvError(
      `header mismatch: expected "${requiredColumns.join(",")}", got "${columns.join(",")}"`,
    );
  }
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== columns.length) {
      throw new CsvError(`row ${i + 1}: expected ${columns.length} fields, got ${parts.length}`);
    }
    const row = parts.map((part, j) => {
      const value = Number(part);
      if (part === "" || Number.isNaN(value)) {
        throw new CsvError(`row ${i + 1}, column "${columns[j]}": not a number: "${part}"`);
      }
      return value;
    });
    rows.push(row);
  }
  if (rows.length === 0) {
    throw new CsvError("empty data: header only");
  }
  return { columns, rows };
}

export function column(table: Table, name: string): number[] {
  const index = table.columns.indexOf(name);
  if (index < 0) {
    throw new CsvError(`missing column(s): ${name}`);
  }
  return table.rows.map((row) => row[index]);
}
