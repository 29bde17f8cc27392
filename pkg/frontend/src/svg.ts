/** Small SVG chart scaffolding: linear scales, axes, polylines and bands. */

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

/** Round-valued ticks covering the domain, roughly `count` of them. */
export function ticks(domain: [number, number], count = 6): number[] {
  const span = domain[1] - domain[0];
  if (span <= 0) return [domain[0]];
  const rawStep = span / count;
  const mag = 10 ** Math.floor(Math.log10(rawStep));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    if (mag * mult >= rawStep) {
      step = mag * mult;
      break;
    }
  }
  const out: number[] = [];
  for (let t = Math.ceil(domain[0] / step) * step; t <= domain[1] + 1e-9; t += step) {
    out.push(Number(t.toFixed(10)));
  }
  return out;
}

export const MARGIN = { top: 30, right: 160, bottom: 45, left: 55 };
export const WIDTH = 760;
export const HEIGHT = 420;

const esc = (s: string) => s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');

export class SvgChart {
  private parts: string[] = [];

  constructor(
    public title: string,
    public x: Scale,
    public y: Scale,
  ) {}

  axes(xLabel: string, yLabel: string): void {
    const { x, y } = this;
    const [x0, x1] = x.range;
    const [y0, y1] = y.range;
    this.parts.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="black"/>`);
    this.parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="black"/>`);
    for (const t of ticks(x.domain)) {
      const px = x(t);
      this.parts.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 5}" stroke="black"/>`);
      this.parts.push(
        `<text x="${px}" y="${y0 + 18}" font-size="11" text-anchor="middle">${t}</text>`,
      );
    }
    for (const t of ticks(y.domain)) {
      const py = y(t);
      this.parts.push(`<line x1="${x0 - 5}" y1="${py}" x2="${x0}" y2="${py}" stroke="black"/>`);
      this.parts.push(
        `<text x="${x0 - 8}" y="${py + 4}" font-size="11" text-anchor="end">${t}</text>`,
      );
      this.parts.push(
        `<line x1="${x0}" y1="${py}" x2="${x1}" y2="${py}" stroke="#ddd" stroke-width="0.5"/>`,
      );
    }
    const xc = (x0 + x1) / 2;
    const yc = (y.range[0] + y.range[1]) / 2;
    this.parts.push(
      `<text x="${xc}" y="${y0 + 36}" font-size="13" text-anchor="middle">${esc(xLabel)}</text>`,
    );
    this.parts.push(
      `<text x="16" y="${yc}" font-size="13" text-anchor="middle" ` +
        `transform="rotate(-90 16 ${yc})">${esc(yLabel)}</text>`,
    );
  }

  line(points: [number, number][], color: string, dashed = false, width = 1.5): void {
    const d = points.map(([px, py]) => `${this.x(px).toFixed(2)},${this.y(py).toFixed(2)}`).join(' ');
    const dash = dashed ? ' stroke-dasharray="6,4"' : '';
    this.parts.push(
      `<polyline points="${d}" fill="none" stroke="${color}" stroke-width="${width}"${dash}/>`,
    );
  }

  /** Shaded region between a lower and upper series sharing the same x values. */
  band(xs: number[], lower: number[], upper: number[], color: string, opacity = 0.18): void {
    const fwd = xs.map((v, i) => `${this.x(v).toFixed(2)},${this.y(upper[i]).toFixed(2)}`);
    const back = xs
      .map((v, i) => `${this.x(v).toFixed(2)},${this.y(lower[i]).toFixed(2)}`)
      .reverse();
    this.parts.push(
      `<polygon points="${fwd.concat(back).join(' ')}" fill="${color}" ` +
        `fill-opacity="${opacity}" stroke="none"/>`,
    );
  }

  legend(entries: { label: string; color: string; dashed?: boolean }[]): void {
    const x0 = this.x.range[1] + 12;
    entries.forEach((e, i) => {
      const y = this.y.range[1] + 14 + i * 18;
      const dash = e.dashed ? ' stroke-dasharray="6,4"' : '';
      this.parts.push(
        `<line x1="${x0}" y1="${y}" x2="${x0 + 24}" y2="${y}" stroke="${e.color}" ` +
          `stroke-width="2"${dash}/>`,
      );
      this.parts.push(
        `<text x="${x0 + 30}" y="${y + 4}" font-size="11">${esc(e.label)}</text>`,
      );
    });
  }

  render(): string {
    const head =
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">\n` +
      `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>\n` +
      `<text x="${WIDTH / 2}" y="20" font-size="15" text-anchor="middle">` +
      `${esc(this.title)}</text>\n`;
    return head + this.parts.join('\n') + '\n</svg>\n';
  }
}

/** Categorical palette with 16 distinguishable hues (beam ports). */
export function categoryColor(i: number): string {
  const hue = (i * 360) / 16;
  return `hsl(${hue.toFixed(0)}, 70%, 42%)`;
}
