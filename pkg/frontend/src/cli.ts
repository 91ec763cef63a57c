#!/usr/bin/env node
/**
 * randenum-figures render --panel <fig1-left|fig1-right|fig2> --in <csv> --out <svg>
 *                         [--epsilon <real>]
 *
 * Exit codes: 0 success, 1 usage error, 2 runtime error (missing file,
 * schema mismatch, empty data).
 */

import * as fs from "fs";

import { CsvError } from "./csv";
import { PANELS, Panel, renderPanel } from "./panels";

const USAGE =
  "usage: randenum-figures render --panel <fig1-left|fig1-right|fig2> " +
  "--in <csv> --out <svg> [--epsilon <real>]";

interface Args {
  panel: Panel;
  input: string;
  output: string;
  epsilon?: number;
}

function parseArgs(argv: string[]): Args {
  if (argv[0] !== "render") {
    throw new UsageError(`unknown command: ${argv[0] ?? "(none)"}`);
  }
  let panel: string | undefined;
  let input: string | undefined;
  let output: string | undefined;
  let epsilon: number | undefined;
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      throw new UsageError(`flag ${flag} needs a value`);
    }
    switch (flag) {
      case "--panel":
        panel = value;
        break;
      case "--in":
        input = value;
        break;
      case "--out":
        output = value;
        break;
      case "--epsilon":
        epsilon = Number(value);
        if (!(epsilon > 0) || Number.isNaN(epsilon)) {
          throw new UsageError(`--epsilon must be a positive number, got ${value}`);
        }
        break;
      default:
        throw new UsageError(`unknown flag: ${flag}`);
    }
  }
  if (!panel || !input || !output) {
    throw new UsageError("--panel, --in and --out are required");
  }
  if (!(PANELS as readonly string[]).includes(panel)) {
    throw new UsageError(`--panel must be one of ${PANELS.join(", ")}, got ${panel}`);
  }
  return { panel: panel as Panel, input, output, epsilon };
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`usage error: ${err.message}`);
      console.error(USAGE);
      return 1;
    }
    throw err;
  }
  let csvText: string;
  try {
    csvText = fs.readFileSync(args.input, "utf-8");
  } catch (err) {
    console.error(`error: cannot read ${args.input}: ${(err as Error).message}`);
    return 2;
  }
  try {
    const rendered = renderPanel(args.panel, csvText, { epsilon: args.epsilon });
    fs.writeFileSync(args.output, rendered);
    console.log(`wrote ${args.output}`);
    return 0;
  } catch (err) {
    if (err instanceof CsvError) {
      console.error(`error: ${args.input}: ${err.message}`);
      return 2;
    }
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
