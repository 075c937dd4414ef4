#!/usr/bin/env node
import { parseArgs } from 'node:util';

import { commandAdapter } from './adapter.js';
import { DimensionMismatchError, exportProbeSet } from './exporter.js';
import { loadManifest } from './manifest.js';

const USAGE = `probe-exporter: run an SR model over a probe manifest

usage: probe-exporter --manifest probes/manifest.json --out exported/ \\
         --command "python3 -m srfreq.cli lpfsr --input {in} --output {out} --scale 4" \\
         [--scale N] [--ext .png|.imgf] [--concurrency N]

The command template runs once per probe/LR image with {in} and {out}
substituted. Outputs plus a completed manifest land in --out, ready for the
hyra and invariance analysis commands.`;

async function main(): Promise<number> {
  let values;
  try {
    ({ values } = parseArgs({
      options: {
        manifest: { type: 'string' },
        out: { type: 'string' },
        command: { type: 'string' },
        scale: { type: 'string' },
        ext: { type: 'string', default: '.png' },
        concurrency: { type: 'string', default: '1' },
        help: { type: 'boolean', default: false },
      },
    }));
  } catch (err) {
    console.error((err as Error).message);
    console.error(USAGE);
    return 2;
  }
  if (values.help) {
    console.log(USAGE);
    return 0;
  }
  if (!values.manifest || !values.out || !values.command) {
    console.error('missing required flag (--manifest, --out, --command)');
    console.error(USAGE);
    return 2;
  }
  const scale = values.scale ? Number(values.scale) : loadManifest(values.manifest).scale;
  if (!Number.isInteger(scale) || scale < 1) {
    console.error(`invalid scale ${values.scale}`);
    return 2;
  }
  try {
    const adapter = commandAdapter(values.command, scale);
    const manifest = await exportProbeSet(adapter, values.manifest, values.out, {
      outputExtension: values.ext,
      concurrency: Number(values.concurrency),
    });
    const count =
      Object.keys(manifest.outputs?.probes ?? {}).length +
      Object.keys(manifest.outputs?.lr ?? {}).length;
    console.log(`exported ${count} outputs to ${values.out}`);
    return 0;
  } catch (err) {
    if (err instanceof DimensionMismatchError) {
      console.error(err.message);
      return 3;
    }
    console.error((err as Error).message);
    return 1;
  }
}

main().then((code) => {
  process.exitCode = code;
});
