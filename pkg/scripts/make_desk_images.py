#!/usr/bin/env python3
"""Regenerate the bundled desk-scale evaluation images (data/desk5/).

Five deterministic natural-statistics images, 264x360, dimensions divisible
by 12 so x2/x3/x4 pairs synthesize without cropping. Re-running reproduces
identical files.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from srfreq.datasets import natural_test_image
from srfreq.imgio import save_png

SEEDS = [101, 202, 303, 404, 505]


def main() -> None:
    out = Path(__file__).resolve().parents[1] / "data" / "desk5"
    out.mkdir(parents=True, exist_ok=True)
    for i, seed in enumerate(SEEDS):
        path = out / f"desk{i:02d}.png"
        save_png(natural_test_image(seed, height=264, width=360), path)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
