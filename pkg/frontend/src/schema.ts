/**
 * CSV schemas produced by the simulator and consumed by the plot commands.
 *
 * Each kind pins its required columns; anything missing (or an empty file)
 * raises a SchemaError that lists what was expected.
 */

import Papa from 'papaparse';

export class SchemaError extends Error {}

export interface PatternRow {
  theta_deg: number;
  port: number;
  gain_dbi: number;
  phase_rad: number;
}

export interface AggregateRow {
  K: number;
  frontend: string;
  precoder: string;
  se_median: number;
  se_q1: number;
  se_q3: number;
  sum_se_mean: number;
}

export const PATTERN_COLUMNS = ['theta_deg', 'port', 'gain_dbi', 'phase_rad'];
export const AGGREGATE_COLUMNS = [
  'K', 'frontend', 'precoder', 'se_median', 'se_q1', 'se_q3', 'sum_se_mean',
];

const STRING_COLUMNS = new Set(['frontend', 'precoder']);

function parseRows(text: string, columns: string[], source: string): Record<string, unknown>[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new SchemaError(`${source}: malformed CSV at row ${e.row}: ${e.message}`);
  }
  const fields = parsed.meta.fields ?? [];
  const missing = columns.filter((c) => !fields.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `${source}: missing column(s) ${missing.join(', ')}; expected header ${columns.join(',')}`,
    );
  }
  if (parsed.data.length === 0) {
    throw new SchemaError(`${source}: no data rows; expected header ${columns.join(',')}`);
  }
  return parsed.data.map((raw, i) => {
    const row: Record<string, unknown> = {};
    for (const col of columns) {
      const value = raw[col];
      if (STRING_COLUMNS.has(col)) {
        row[col] = value;
        continue;
      }
      const num = Number(value);
      if (!Number.isFinite(num)) {
        throw new SchemaError(`${source}: row ${i + 1}: column ${col} is not numeric: ${value}`);
      }
      row[col] = num;
    }
    return row;
  });
}

export function parsePattern(text: string, source = 'pattern CSV'): PatternRow[] {
  return parseRows(text, PATTERN_COLUMNS, source) as unknown as PatternRow[];
}

export function parseAggregate(text: string, source = 'aggregate CSV'): AggregateRow[] {
  return parseRows(text, AGGREGATE_COLUMNS, source) as unknown as AggregateRow[];
}
