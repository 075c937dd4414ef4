import { spawn } from 'node:child_process';

/** One inference run: read inputPath, write the upscaled raster to outputPath. */
export type ModelRunner = (inputPath: string, outputPath: string) => Promise<void>;

export interface ModelAdapter {
  scale: number;
  run: ModelRunner;
}

/**
 * External-command adapter. The template is split on whitespace and every
 * token has {in}/{out} substituted, then spawned without a shell, e.g.
 *
 *   "python3 -m srfreq.cli lpfsr --input {in} --output {out} --scale 4"
 *
 * A nonzero exit rejects with the captured stderr/stdout as the diagnostic.
 */
export function commandAdapter(template: string, scale: number): ModelAdapter {
  const tokens = template.split(/\s+/).filter((t) => t.length > 0);
  if (!tokens.some((t) => t.includes('{in}')) || !tokens.some((t) => t.includes('{out}'))) {
    throw new Error('command template must contain {in} and {out} placeholders');
  }
  const run: ModelRunner = (inputPath, outputPath) =>
    new Promise((resolve, reject) => {
      const argv = tokens.map((t) =>
        t.replaceAll('{in}', inputPath).replaceAll('{out}', outputPath),
      );
      const child = spawn(argv[0], argv.slice(1));
      let captured = '';
      child.stdout.on('data', (d) => (captured += d.toString()));
      child.stderr.on('data', (d) => (captured += d.toString()));
      child.on('error', (err) => reject(new Error(`failed to spawn ${argv[0]}: ${err.message}`)));
      child.on('close', (code) => {
        if (code === 0) {
          resolve();
        } else {
          reject(new Error(`model command exited with ${code} for ${inputPath}:\n${captured}`));
        }
      });
    });
  return { scale, run };
}

/** In-process adapter for models callable from Node. */
export function callableAdapter(fn: ModelRunner, scale: number): ModelAdapter {
  return { scale, run: fn };
}
