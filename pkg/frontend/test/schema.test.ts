import { readFileSync } from 'fs';
import { describe, expect, it } from 'vitest';
import { SchemaError, parseAggregate, parsePattern } from '../src/schema.js';

const sample = (name: string) =>
  readFileSync(new URL(`../../data/sample_run/${name}`, import.meta.url), 'utf8');

describe('parsePattern', () => {
  it('parses the shipped pattern table', () => {
    const rows = parsePattern(sample('patterns_butler.csv'));
    expect(rows.length).toBeGreaterThan(1000);
    expect(new Set(rows.map((r) => r.port)).size).toBe(16);
    expect(rows[0]).toHaveProperty('gain_dbi');
  });

  it('rejects a missing column and names it', () => {
    const text = 'theta_deg,port,gain_dbi\n0,1,10\n';
    expect(() => parsePattern(text)).toThrowError(SchemaError);
    expect(() => parsePattern(text)).toThrowError(/phase_rad/);
  });

  it('rejects an empty file', () => {
    expect(() => parsePattern('')).toThrowError(SchemaError);
  });

  it('rejects a header-only file', () => {
    expect(() => parsePattern('theta_deg,port,gain_dbi,phase_rad\n')).toThrowError(
      /no data rows/,
    );
  });

  it('rejects non-numeric values', () => {
    const text = 'theta_deg,port,gain_dbi,phase_rad\n0,1,loud,0\n';
    expect(() => parsePattern(text)).toThrowError(/gain_dbi/);
  });
});

describe('parseAggregate', () => {
  it('parses the shipped aggregate table', () => {
    const rows = parseAggregate(sample('aggregate.csv'));
    expect(rows.length).toBe(48);
    expect(rows.every((r) => r.se_q1 <= r.se_median && r.se_median <= r.se_q3)).toBe(true);
    expect(new Set(rows.map((r) => r.frontend))).toEqual(new Set(['butler', 'patch']));
  });

  it('rejects a results-shaped file', () => {
    const text = 'K,frontend,precoder,realization,user,theta_bs_deg,se_bpshz,sum_se_bpshz\n';
    expect(() => parseAggregate(text + '1,butler,zf,0,1,0,1,1\n')).toThrowError(/se_median/);
  });
});
