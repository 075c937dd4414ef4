import { openSync, readSync, closeSync } from 'node:fs';

export interface ImageInfo {
  width: number;
  height: number;
  channels?: number;
}

const PNG_SIGNATURE = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
const IMGF_MAGIC = Buffer.from('IMGF', 'ascii');

/**
 * Read raster dimensions from a file header without decoding pixels.
 * Supports PNG (IHDR) and the toolkit's IMGF v1 raw float format.
 */
export function readImageInfo(path: string): ImageInfo {
  const fd = openSync(path, 'r');
  try {
    const head = Buffer.alloc(24);
    const got = readSync(fd, head, 0, head.length, 0);
    if (got >= 24 && head.subarray(0, 8).equals(PNG_SIGNATURE)) {
      if (head.toString('ascii', 12, 16) !== 'IHDR') {
        throw new Error(`${path}: PNG without leading IHDR chunk`);
      }
      return { width: head.readUInt32BE(16), height: head.readUInt32BE(20) };
    }
    if (got >= 16 && head.subarray(0, 4).equals(IMGF_MAGIC)) {
      return {
        width: head.readUInt32LE(4),
        height: head.readUInt32LE(8),
        channels: head.readUInt32LE(12),
      };
    }
    throw new Error(`${path}: not a PNG or IMGF file`);
  } finally {
    closeSync(fd);
  }
}
