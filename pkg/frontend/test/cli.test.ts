import { execFileSync } from 'child_process';
import { mkdtempSync, readFileSync, statSync, writeFileSync } from 'fs';
import { tmpdir } from 'os';
import { fileURLToPath } from 'url';
import { join } from 'path';
import { describe, expect, it } from 'vitest';

const CLI = fileURLToPath(new URL('../dist/cli.js', import.meta.url));
const DATA = fileURLToPath(new URL('../../data/sample_run', import.meta.url));
const out = mkdtempSync(join(tmpdir(), 'plots-'));

function run(args: string[]): { code: number; stderr: string } {
  try {
    execFileSync(process.execPath, [CLI, ...args], { stdio: 'pipe' });
    return { code: 0, stderr: '' };
  } catch (err: any) {
    return { code: err.status ?? 1, stderr: String(err.stderr ?? '') };
  }
}

describe('plots CLI', () => {
  it('renders all three kinds from the shipped sample CSVs', () => {
    const jobs: [string, string[]][] = [
      ['pattern', [join(DATA, 'patterns_butler.csv')]],
      ['individual_se', [join(DATA, 'aggregate.csv')]],
      ['summed_se', [join(DATA, 'aggregate.csv')]],
    ];
    for (const [kind, inputs] of jobs) {
      const img = join(out, `${kind}.svg`);
      const res = run([kind, ...inputs.flatMap((p) => ['--in', p]), '--out', img]);
      expect(res.code, res.stderr).toBe(0);
      expect(statSync(img).size).toBeGreaterThan(0);
      expect(readFileSync(img, 'utf8')).toContain('<svg');
    }
  });

  it('accepts multiple pattern inputs', () => {
    const img = join(out, 'both.svg');
    const res = run([
      'pattern',
      '--in', join(DATA, 'patterns_butler.csv'),
      '--in', join(DATA, 'patterns_patch.csv'),
      '--out', img,
    ]);
    expect(res.code).toBe(0);
    expect(statSync(img).size).toBeGreaterThan(0);
  });

  it('exits nonzero on a schema violation', () => {
    const bad = join(out, 'bad.csv');
    writeFileSync(bad, 'theta_deg,port\n0,1\n');
    const res = run(['pattern', '--in', bad, '--out', join(out, 'bad.svg')]);
    expect(res.code).not.toBe(0);
    expect(res.stderr).toContain('schema error');
    expect(res.stderr).toContain('gain_dbi');
  });

  it('exits nonzero on an empty input', () => {
    const empty = join(out, 'empty.csv');
    writeFileSync(empty, '');
    expect(run(['summed_se', '--in', empty, '--out', join(out, 'e.svg')]).code).not.toBe(0);
  });

  it('exits nonzero on a missing file', () => {
    expect(run(['pattern', '--in', join(out, 'nope.csv'), '--out', join(out, 'n.svg')]).code,
    ).not.toBe(0);
  });

  it('exits nonzero on an unknown kind', () => {
    expect(run(['violin', '--in', join(DATA, 'aggregate.csv'), '--out', join(out, 'v.svg')]).code,
    ).not.toBe(0);
  });
});
