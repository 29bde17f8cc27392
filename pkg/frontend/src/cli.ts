#!/usr/bin/env node
/** plots <kind> --in <csv> [--in <csv>...] --out <img> */

import { readFileSync, writeFileSync } from 'fs';
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';
import { renderIndividualSe, renderPattern, renderSummedSe } from './plots.js';
import { SchemaError, parseAggregate, parsePattern } from './schema.js';

export const KINDS = ['pattern', 'individual_se', 'summed_se'] as const;
export type Kind = (typeof KINDS)[number];

export function render(kind: Kind, inputs: string[]): string {
  const texts = inputs.map((path) => ({ path, text: readFileSync(path, 'utf8') }));
  if (kind === 'pattern') {
    return renderPattern(texts.flatMap((t) => parsePattern(t.text, t.path)));
  }
  const rows = texts.flatMap((t) => parseAggregate(t.text, t.path));
  return kind === 'individual_se' ? renderIndividualSe(rows) : renderSummedSe(rows);
}

export function main(argv: string[]): number {
  const args = yargs(argv)
    .scriptName('plots')
    .command('$0 <kind>', 'render a figure from simulator CSV output', (y) =>
      y
        .positional('kind', { choices: KINDS, demandOption: true })
        .option('in', {
          type: 'string',
          array: true,
          demandOption: true,
          describe: 'input CSV file(s)',
        })
        .option('out', {
          type: 'string',
          demandOption: true,
          describe: 'output SVG file',
        }),
    )
    .strict()
    .exitProcess(false)
    .fail((msg) => {
      throw new Error(msg);
    })
    .parseSync();

  const svg = render(args.kind as Kind, args.in as string[]);
  writeFileSync(args.out as string, svg);
  console.log(`wrote ${args.out}`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split('/').pop()!);

if (invokedDirectly) {
  try {
    process.exit(main(hideBin(process.argv)));
  } catch (err) {
    const reason = err instanceof SchemaError ? 'schema error' : 'error';
    console.error(`${reason}: ${err instanceof Error ? err.message : err}`);
    process.exit(1);
  }
}
