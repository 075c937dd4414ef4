import { spawnSync } from 'node:child_process';
import { copyFileSync, existsSync, mkdtempSync, readFileSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import * as path from 'node:path';
import { fileURLToPath } from 'node:url';

import { beforeAll, describe, expect, it } from 'vitest';

import { callableAdapter, commandAdapter } from '../src/adapter.js';
import { DimensionMismatchError, exportProbeSet } from '../src/exporter.js';
import { readImageInfo } from '../src/imageInfo.js';
import { loadManifest } from '../src/manifest.js';

const HERE = path.dirname(fileURLToPath(import.meta.url));
const REPO = path.resolve(HERE, '..', '..');
const DESK_IMAGE = path.join(REPO, 'data', 'desk5', 'desk00.png');
const SCALE = 4;
const PROBE_SIZE = 33;
const LPF_RADIUS = 52; // (pos - 3) * scale: shifted impulses stay clear of the padding zone
const LPFSR_CMD = `python3 -m srfreq.cli lpfsr --input {in} --output {out} --scale ${SCALE} --route spatial --radius ${LPF_RADIUS}`;

function runToolkit(args: string[]): { status: number; output: string } {
  const res = spawnSync('python3', ['-m', 'srfreq.cli', ...args], { encoding: 'utf-8' });
  return { status: res.status ?? -1, output: `${res.stdout}\n${res.stderr}` };
}

function makeProbeSet(dir: string, extra: string[] = []): string {
  const res = runToolkit([
    'probe-gen', '--size', String(PROBE_SIZE), '--pos', '16,16', '--scale', String(SCALE),
    '--out', dir, ...extra,
  ]);
  expect(res.status, res.output).toBe(0);
  return path.join(dir, 'manifest.json');
}

let probeDir: string;
let manifestPath: string;

beforeAll(() => {
  probeDir = mkdtempSync(path.join(tmpdir(), 'probes-'));
  manifestPath = makeProbeSet(probeDir, ['--lr', DESK_IMAGE]);
});

describe('readImageInfo', () => {
  it('reads PNG dimensions from the header', () => {
    const manifest = loadManifest(manifestPath);
    const probePath = path.join(probeDir, manifest.files.probes['0,0']);
    expect(readImageInfo(probePath)).toEqual({ width: PROBE_SIZE, height: PROBE_SIZE });
  });

  it('rejects files that are neither PNG nor IMGF', () => {
    const junk = path.join(probeDir, 'junk.bin');
    writeFileSync(junk, 'definitely not an image');
    expect(() => readImageInfo(junk)).toThrow(/not a PNG or IMGF/);
  });
});

describe('exportProbeSet with the toolkit LPF as the model', () => {
  let outDir: string;

  beforeAll(async () => {
    outDir = mkdtempSync(path.join(tmpdir(), 'exported-'));
    const adapter = commandAdapter(LPFSR_CMD, SCALE);
    await exportProbeSet(adapter, manifestPath, outDir, { outputExtension: '.imgf' });
  });

  it('writes outputs for every probe and LR image', () => {
    const completed = loadManifest(path.join(outDir, 'manifest.json'));
    expect(Object.keys(completed.outputs!.probes).sort()).toEqual(['-3,-3', '0,0', '3,-2']);
    expect(Object.keys(completed.outputs!.lr)).toEqual(['desk00.png']);
    for (const rel of Object.values(completed.outputs!.probes)) {
      const info = readImageInfo(path.join(outDir, rel));
      expect(info).toMatchObject({ width: PROBE_SIZE * SCALE, height: PROBE_SIZE * SCALE });
    }
  });

  it('passes the spatial-invariance check at the LTI tolerance', () => {
    const res = runToolkit([
      'invariance', '--manifest', path.join(outDir, 'manifest.json'),
      '--tolerance', '1e-6',
    ]);
    expect(res.status, res.output).toBe(0);
    expect(res.output).toContain('PASS');
  });

  it('closes the hyra loop with a negligible residual', () => {
    const completed = loadManifest(path.join(outDir, 'manifest.json'));
    const hyraOut = mkdtempSync(path.join(tmpdir(), 'hyra-'));
    const res = runToolkit([
      'hyra',
      '--lr', DESK_IMAGE,
      '--sr', path.join(outDir, completed.outputs!.lr['desk00.png']),
      '--probe-out', path.join(outDir, completed.outputs!.probes['0,0']),
      '--manifest', path.join(outDir, 'manifest.json'),
      '--alignment', 'corner',
      '--out', hyraOut,
    ]);
    expect(res.status, res.output).toBe(0);
    const report = JSON.parse(readFileSync(path.join(hyraOut, 'report.json'), 'utf-8'));
    expect(report.g_inf_interior).toBeLessThan(1e-5);
    expect(report.sinc_similarity.score).toBeGreaterThanOrEqual(0.999);
  });

  it('is idempotent for a deterministic model', async () => {
    const first = readFileSync(path.join(outDir, 'manifest.json'), 'utf-8');
    const sample = path.join(outDir, 'out_probe_0_0.imgf');
    const firstBytes = readFileSync(sample);
    await exportProbeSet(commandAdapter(LPFSR_CMD, SCALE), manifestPath, outDir, {
      outputExtension: '.imgf',
    });
    expect(readFileSync(path.join(outDir, 'manifest.json'), 'utf-8')).toBe(first);
    expect(readFileSync(sample).equals(firstBytes)).toBe(true);
  });
});

describe('failure modes', () => {
  it('reports dimension mismatches per file', async () => {
    // adapter claims x2 but the command produces x4 outputs
    const adapter = commandAdapter(LPFSR_CMD, 2);
    const outDir = mkdtempSync(path.join(tmpdir(), 'mismatch-'));
    await expect(
      exportProbeSet(adapter, manifestPath, outDir, { outputExtension: '.imgf' }),
    ).rejects.toThrow(DimensionMismatchError);
    try {
      await exportProbeSet(adapter, manifestPath, outDir, { outputExtension: '.imgf' });
    } catch (err) {
      const mismatches = (err as DimensionMismatchError).mismatches;
      expect(mismatches.length).toBe(4); // 3 probes + 1 LR image
      expect(mismatches[0]).toMatch(/got 1440x1056, expected 720x528/);
    }
  });

  it('rejects an empty manifest without writing anything', async () => {
    const dir = mkdtempSync(path.join(tmpdir(), 'empty-'));
    const emptyManifest = path.join(dir, 'manifest.json');
    writeFileSync(
      emptyManifest,
      JSON.stringify({
        scale: 2,
        probe: { size: 11, pos: [5, 5], value: 1.0, channels: 3 },
        shifts: [],
        files: { probes: {}, lr: [] },
      }),
    );
    const outDir = path.join(dir, 'out');
    await expect(
      exportProbeSet(commandAdapter(LPFSR_CMD, 2), emptyManifest, outDir),
    ).rejects.toThrow(/no probes/);
    expect(existsSync(path.join(outDir, 'manifest.json'))).toBe(false);
  });

  it('surfaces the model diagnostic on command failure', async () => {
    const adapter = commandAdapter('python3 -c import_sys;sys.exit(7) --in {in} --out {out}', 2);
    const outDir = mkdtempSync(path.join(tmpdir(), 'fail-'));
    await expect(exportProbeSet(adapter, manifestPath, outDir)).rejects.toThrow(
      /model command exited/,
    );
  });

  it('requires {in} and {out} in the template', () => {
    expect(() => commandAdapter('python3 foo.py', 2)).toThrow(/placeholders/);
  });
});

describe('callable adapter', () => {
  it('runs an in-process model', async () => {
    // a fake x1 "model" that copies its input; declare scale 1 so the
    // dimension check passes
    const dir = mkdtempSync(path.join(tmpdir(), 'callable-'));
    const m = makeProbeSet(dir);
    const outDir = path.join(dir, 'out');
    const adapter = callableAdapter(async (input, output) => {
      copyFileSync(input, output);
    }, 1);
    const completed = await exportProbeSet(adapter, m, outDir);
    expect(Object.keys(completed.outputs!.probes)).toHaveLength(3);
    expect(readImageInfo(path.join(outDir, 'out_probe_0_0.png')).width).toBe(PROBE_SIZE);
  });
});
