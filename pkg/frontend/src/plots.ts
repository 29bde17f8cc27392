/**
 * Figure builders. Three kinds:
 *  - pattern: all beam lobes in dBi versus azimuth, one color per port
 *  - individual_se: per-user SE median with quartile band versus user count
 *  - summed_se: mean summed SE versus user count, solid ZF / dashed RZF
 *
 * Axis ranges always come from the data. Input rows may be concatenated from
 * several files; string columns distinguish the series.
 */

import type { AggregateRow, PatternRow } from './schema.js';
import { HEIGHT, MARGIN, SvgChart, WIDTH, categoryColor, extent, linearScale } from './svg.js';

const PLOT_X: [number, number] = [MARGIN.left, WIDTH - MARGIN.right];
const PLOT_Y: [number, number] = [HEIGHT - MARGIN.bottom, MARGIN.top];

const FRONTEND_COLORS: Record<string, string> = {
  butler: '#1f77b4',
  patch: '#d62728',
};

const seriesColor = (frontend: string, index: number) =>
  FRONTEND_COLORS[frontend] ?? categoryColor(index);

function sortedUnique<T>(values: T[]): T[] {
  return [...new Set(values)].sort((a, b) => (a < b ? -1 : a > b ? 1 : 0));
}

export function renderPattern(rows: PatternRow[], gainFloorDbi = -30): string {
  const ports = sortedUnique(rows.map((r) => r.port));
  const visible = rows.filter((r) => r.gain_dbi >= gainFloorDbi);
  const x = linearScale(extent(rows.map((r) => r.theta_deg)), PLOT_X);
  const y = linearScale(extent(visible.map((r) => r.gain_dbi)), PLOT_Y);
  const chart = new SvgChart('Beam patterns', x, y);
  chart.axes('azimuth (deg)', 'gain (dBi)');
  const legend: { label: string; color: string }[] = [];
  ports.forEach((port, i) => {
    const color = categoryColor(i);
    const pts = rows
      .filter((r) => r.port === port && r.gain_dbi >= gainFloorDbi)
      .sort((a, b) => a.theta_deg - b.theta_deg)
      .map((r): [number, number] => [r.theta_deg, r.gain_dbi]);
    if (pts.length > 1) chart.line(pts, color, false, 1.2);
    legend.push({ label: `port ${port}`, color });
  });
  chart.legend(legend);
  return chart.render();
}

interface Series {
  frontend: string;
  precoder: string;
  rows: AggregateRow[];
}

function groupSeries(rows: AggregateRow[]): Series[] {
  const out: Series[] = [];
  for (const frontend of sortedUnique(rows.map((r) => r.frontend))) {
    for (const precoder of sortedUnique(rows.map((r) => r.precoder))) {
      const sel = rows
        .filter((r) => r.frontend === frontend && r.precoder === precoder)
        .sort((a, b) => a.K - b.K);
      if (sel.length > 0) out.push({ frontend, precoder, rows: sel });
    }
  }
  return out;
}

export function renderIndividualSe(rows: AggregateRow[]): string {
  const series = groupSeries(rows);
  const x = linearScale(extent(rows.map((r) => r.K)), PLOT_X);
  const y = linearScale(
    extent(rows.flatMap((r) => [r.se_q1, r.se_q3, r.se_median])),
    PLOT_Y,
  );
  const chart = new SvgChart('Individual spectral efficiency', x, y);
  chart.axes('number of users K', 'SE per user (bps/Hz)');
  const legend: { label: string; color: string; dashed?: boolean }[] = [];
  series.forEach((s, i) => {
    const color = seriesColor(s.frontend, i);
    const dashed = s.precoder === 'rzf';
    const ks = s.rows.map((r) => r.K);
    chart.band(ks, s.rows.map((r) => r.se_q1), s.rows.map((r) => r.se_q3), color);
    chart.line(s.rows.map((r): [number, number] => [r.K, r.se_median]), color, dashed);
    legend.push({ label: `${s.frontend} ${s.precoder}`, color, dashed });
  });
  chart.legend(legend);
  return chart.render();
}

export function renderSummedSe(rows: AggregateRow[]): string {
  const series = groupSeries(rows);
  const x = linearScale(extent(rows.map((r) => r.K)), PLOT_X);
  const y = linearScale(extent(rows.map((r) => r.sum_se_mean)), PLOT_Y);
  const chart = new SvgChart('Summed spectral efficiency', x, y);
  chart.axes('number of users K', 'summed SE (bps/Hz)');
  const legend: { label: string; color: string; dashed?: boolean }[] = [];
  series.forEach((s, i) => {
    const color = seriesColor(s.frontend, i);
    const dashed = s.precoder === 'rzf';
    chart.line(s.rows.map((r): [number, number] => [r.K, r.sum_se_mean]), color, dashed);
    legend.push({ label: `${s.frontend} ${s.precoder}`, color, dashed });
  });
  chart.legend(legend);
  return chart.render();
}
