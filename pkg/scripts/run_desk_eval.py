#!/usr/bin/env python3
"""End-to-end desk-scale evaluation driver.

Synthesizes x2/x3/x4 pairs from data/desk5, scores bicubic upscaling through
the CLI, and runs the x2 cutoff sweep. Results land under out/desk_eval/.
Point SRFREQ_DIV2K (or place data/DIV2K) at a DIV2K validation tree and use
the CLI directly for the full-scale version of the same experiments.
"""

import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from srfreq.cli import main as cli
from srfreq.datasets import synthesize_pair
from srfreq.imgio import load_image, save_png

REPO = Path(__file__).resolve().parents[1]


def main() -> None:
    out_root = REPO / "out" / "desk_eval"
    out_root.mkdir(parents=True, exist_ok=True)
    images = [load_image(p) for p in sorted((REPO / "data" / "desk5").glob("*.png"))]

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        for scale in (2, 3, 4):
            hr_dir, lr_dir, sr_dir = (tmp / f"hr{scale}", tmp / f"lr{scale}", tmp / f"sr{scale}")
            for d in (hr_dir, lr_dir, sr_dir):
                d.mkdir()
            for i, img in enumerate(images):
                lr, hr_c = synthesize_pair(img, scale)
                save_png(hr_c, hr_dir / f"img{i}.png")
                save_png(lr, lr_dir / f"img{i}.png")
                cli(["resize", "--input", str(lr_dir / f"img{i}.png"),
                     "--output", str(sr_dir / f"img{i}.png"), "--scale", str(scale)])
            cli(["metrics", "--hr", str(hr_dir), "--sr", str(sr_dir),
                 "--out", str(out_root / f"bicubic_x{scale}")])
            if scale == 2:
                cli(["sweep", "--hr", str(hr_dir), "--lr", str(lr_dir), "--scale", "2",
                     "--out", str(out_root / "sweep_x2")])
    print(f"results under {out_root}")


if __name__ == "__main__":
    main()
