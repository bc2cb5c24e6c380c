// CSV ingestion: one numeric value per line, an optional single header
// line (auto-detected when the first line is not numeric), blank lines
// ignored. Same dialect the server reads, so what previews here is what
// the service bins.

const NUMBER_RE = /^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$/;

export interface CsvResult {
  values: number[];
  /** Set when a non-header line failed to parse. */
  error?: { line: number; text: string };
}

export function parseCsvValues(text: string): CsvResult {
  const values: number[] = [];
  let firstContentLine = true;
  const lines = text.split(/\r\n|\r|\n/);
  for (let i = 0; i < lines.length; i++) {
    const line = (lines[i] ?? "").trim();
    if (line === "") continue;
    if (NUMBER_RE.test(line)) {
      values.push(Number(line));
    } else if (!firstContentLine) {
      return { values, error: { line: i + 1, text: line } };
    }
    firstContentLine = false;
  }
  return { values };
}

export interface DatasetSummary {
  count: number;
  min: number;
  max: number;
}

export function summarize(values: number[]): DatasetSummary | null {
  if (values.length === 0) return null;
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  return { count: values.length, min, max };
}
