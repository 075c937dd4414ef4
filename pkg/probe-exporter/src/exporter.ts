import { mkdirSync } from 'node:fs';
import * as path from 'node:path';

import { ModelAdapter } from './adapter.js';
import { readImageInfo } from './imageInfo.js';
import { ProbeManifest, loadManifest, saveManifest } from './manifest.js';

export interface ExportOptions {
  /** Extension for model outputs (the model decides the format it writes). */
  outputExtension?: string;
  /** Parallel invocations; outputs are per-file so any order is safe. */
  concurrency?: number;
}

export class DimensionMismatchError extends Error {
  constructor(public readonly mismatches: string[]) {
    super(`output dimensions do not match the declared scale:\n${mismatches.join('\n')}`);
  }
}

interface Job {
  kind: 'probe' | 'lr';
  key: string;
  inputPath: string;
  outputName: string;
}

function outputNameFor(inputRel: string, extension: string): string {
  const base = path.basename(inputRel, path.extname(inputRel));
  return `out_${base}${extension}`;
}

async function runPool(jobs: Job[], worker: (job: Job) => Promise<void>, width: number) {
  let next = 0;
  const lanes = Array.from({ length: Math.max(1, width) }, async () => {
    while (next < jobs.length) {
      const job = jobs[next++];
      await worker(job);
    }
  });
  await Promise.all(lanes);
}

/**
 * Run the adapter over every probe and LR image listed in a manifest and
 * write a completed manifest (with `outputs`) into outDir.
 *
 * Inputs resolve relative to the manifest; the completed manifest's paths
 * are rewritten relative to outDir so the analysis commands can consume it
 * in place. Dimension mismatches are collected across all files and raised
 * together; a model failure aborts with its captured diagnostic.
 */
export async function exportProbeSet(
  adapter: ModelAdapter,
  manifestPath: string,
  outDir: string,
  options: ExportOptions = {},
): Promise<ProbeManifest> {
  const manifest = loadManifest(manifestPath);
  const extension = options.outputExtension ?? '.png';
  const manifestDir = path.dirname(path.resolve(manifestPath));

  const probeKeys = Object.keys(manifest.files.probes).sort();
  if (probeKeys.length === 0) {
    throw new Error(`manifest ${manifestPath} lists no probes; nothing to export`);
  }

  const jobs: Job[] = probeKeys.map((key) => ({
    kind: 'probe' as const,
    key,
    inputPath: path.resolve(manifestDir, manifest.files.probes[key]),
    outputName: outputNameFor(manifest.files.probes[key], extension),
  }));
  for (const rel of manifest.files.lr ?? []) {
    jobs.push({
      kind: 'lr',
      key: path.basename(rel),
      inputPath: path.resolve(manifestDir, rel),
      outputName: outputNameFor(rel, extension),
    });
  }

  mkdirSync(outDir, { recursive: true });
  const mismatches: string[] = [];
  await runPool(
    jobs,
    async (job) => {
      const outputPath = path.join(outDir, job.outputName);
      await adapter.run(job.inputPath, outputPath);
      const input = readImageInfo(job.inputPath);
      const output = readImageInfo(outputPath);
      const wantW = input.width * adapter.scale;
      const wantH = input.height * adapter.scale;
      if (output.width !== wantW || output.height !== wantH) {
        mismatches.push(
          `${job.outputName}: got ${output.width}x${output.height}, ` +
            `expected ${wantW}x${wantH} (x${adapter.scale} of ${input.width}x${input.height})`,
        );
      }
    },
    options.concurrency ?? 1,
  );
  if (mismatches.length > 0) {
    throw new DimensionMismatchError(mismatches.sort());
  }

  const completed: ProbeManifest = {
    ...manifest,
    files: {
      probes: Object.fromEntries(
        probeKeys.map((key) => [
          key,
          path.relative(outDir, path.resolve(manifestDir, manifest.files.probes[key])),
        ]),
      ),
      lr: (manifest.files.lr ?? []).map((rel) =>
        path.relative(outDir, path.resolve(manifestDir, rel)),
      ),
    },
    outputs: {
      probes: Object.fromEntries(
        jobs.filter((j) => j.kind === 'probe').map((j) => [j.key, j.outputName]),
      ),
      lr: Object.fromEntries(
        jobs.filter((j) => j.kind === 'lr').map((j) => [j.key, j.outputName]),
      ),
    },
  };
  saveManifest(completed, path.join(outDir, 'manifest.json'));
  return completed;
}
