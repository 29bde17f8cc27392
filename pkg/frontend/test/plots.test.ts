import { readFileSync } from 'fs';
import { describe, expect, it } from 'vitest';
import { renderIndividualSe, renderPattern, renderSummedSe } from '../src/plots.js';
import { parseAggregate, parsePattern } from '../src/schema.js';

const sample = (name: string) =>
  readFileSync(new URL(`../../data/sample_run/${name}`, import.meta.url), 'utf8');

const count = (svg: string, re: RegExp) => (svg.match(re) ?? []).length;

describe('renderPattern', () => {
  const svg = renderPattern(parsePattern(sample('patterns_butler.csv')));

  it('draws one lobe per port with distinct colors', () => {
    expect(count(svg, /<polyline/g)).toBeGreaterThanOrEqual(16);
    const colors = new Set([...svg.matchAll(/stroke="(hsl[^"]+)"/g)].map((m) => m[1]));
    expect(colors.size).toBe(16);
  });

  it('labels all ports in the legend', () => {
    for (let p = 1; p <= 16; p++) expect(svg).toContain(`port ${p}`);
  });

  it('derives the x range from the data', () => {
    expect(svg).toContain('azimuth (deg)');
    expect(svg).toContain('>-50<');
    expect(svg).toContain('>50<');
  });
});

describe('renderSummedSe', () => {
  const rows = parseAggregate(sample('aggregate.csv'));
  const svg = renderSummedSe(rows);

  it('draws one curve per frontend/precoder pair', () => {
    expect(count(svg, /<polyline/g)).toBe(8);
  });

  it('dashes RZF and leaves ZF solid', () => {
    expect(count(svg, /stroke-dasharray/g)).toBeGreaterThan(0);
    expect(svg).toContain('butler zf');
    expect(svg).toContain('patch rzf');
  });

  it('is idempotent', () => {
    expect(renderSummedSe(rows)).toBe(svg);
  });
});

describe('renderIndividualSe', () => {
  const svg = renderIndividualSe(parseAggregate(sample('aggregate.csv')));

  it('draws a quartile band per series', () => {
    expect(count(svg, /<polygon/g)).toBe(8);
    expect(count(svg, /<polyline/g)).toBe(8);
  });

  it('labels the y axis as per-user SE', () => {
    expect(svg).toContain('SE per user (bps/Hz)');
  });
});
