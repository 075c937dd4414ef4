import { readFileSync, writeFileSync } from 'node:fs';

export interface ProbeDescription {
  size: number;
  pos: [number, number];
  value: number;
  channels: number;
}

export interface ProbeManifest {
  scale: number;
  probe: ProbeDescription;
  shifts: [number, number][];
  files: {
    probes: Record<string, string>;
    lr: string[];
  };
  outputs?: {
    probes: Record<string, string>;
    lr: Record<string, string>;
  };
}

export function loadManifest(path: string): ProbeManifest {
  const parsed = JSON.parse(readFileSync(path, 'utf-8'));
  for (const key of ['scale', 'probe', 'shifts', 'files']) {
    if (!(key in parsed)) {
      throw new Error(`manifest ${path} missing required key '${key}'`);
    }
  }
  if (typeof parsed.scale !== 'number' || parsed.scale < 1) {
    throw new Error(`manifest ${path} has invalid scale ${parsed.scale}`);
  }
  if (!parsed.files.probes || typeof parsed.files.probes !== 'object') {
    throw new Error(`manifest ${path} has no files.probes map`);
  }
  return parsed as ProbeManifest;
}

export function saveManifest(manifest: ProbeManifest, path: string): void {
  writeFileSync(path, JSON.stringify(manifest, null, 2) + '\n');
}
