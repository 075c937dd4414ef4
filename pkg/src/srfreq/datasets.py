"""Dataset plumbing: pair synthesis, directory pairing, and deterministic
natural-statistics test images.

LR sides of synthesized pairs use antialiased Keys-bicubic downsampling, the
same protocol that produced the standard benchmark LR sets.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ParameterError, ShapeError
from .image import ImageF
from .lpfsr import _keys_cubic

__all__ = [
    "center_crop_to_multiple",
    "downsample_bicubic",
    "synthesize_pair",
    "natural_test_image",
    "paired_files",
]


def center_crop_to_multiple(img: ImageF, scale: int) -> ImageF:
    """Center-crop so both spatial dims are divisible by ``scale``."""
    h = img.height - img.height % scale
    w = img.width - img.width % scale
    if h == 0 or w == 0:
        raise ShapeError(f"image {img.height}x{img.width} too small for scale {scale}")
    top = (img.height - h) // 2
    left = (img.width - w) // 2
    return ImageF(img.data[:, top : top + h, left : left + w])


def _down_axis_weights(n_in: int, scale: int) -> tuple[np.ndarray, np.ndarray]:
    """Antialiased bicubic weights: kernel stretched by the scale factor."""
    n_out = n_in // scale
    src = (np.arange(n_out) + 0.5) * scale - 0.5
    support = 2.0 * scale
    left = np.floor(src - support + 1).astype(int)
    offsets = np.arange(int(2 * support))
    idx = left[:, None] + offsets[None, :]
    weights = _keys_cubic((src[:, None] - idx) / scale)
    weights /= weights.sum(axis=1, keepdims=True)
    return np.clip(idx, 0, n_in - 1), weights


def downsample_bicubic(img: ImageF, scale: int) -> ImageF:
    """Integer-factor bicubic downsampling with antialiasing; dims must divide."""
    if scale < 2:
        raise ParameterError(f"scale must be >= 2, got {scale}")
    if img.height % scale or img.width % scale:
        raise ShapeError(
            f"image {img.height}x{img.width} not divisible by {scale}; crop first"
        )
    ridx, rw = _down_axis_weights(img.height, scale)
    cidx, cw = _down_axis_weights(img.width, scale)

    def run(ch: np.ndarray) -> np.ndarray:
        rows = np.einsum("ot,otw->ow", rw, ch[ridx, :])
        return np.einsum("ot,hot->ho", cw, rows[:, cidx])

    return img.map_channels(run)


def synthesize_pair(hr: ImageF, scale: int) -> tuple[ImageF, ImageF]:
    """(lr, hr) pair: center-crop HR to a multiple of scale, then downsample."""
    hr_c = center_crop_to_multiple(hr, scale)
    return downsample_bicubic(hr_c, scale), hr_c


def natural_test_image(seed: int, height: int = 264, width: int = 360, channels: int = 3) -> ImageF:
    """Deterministic image with natural statistics (1/f spectrum plus edges).

    Pink-noise texture, a smooth illumination gradient, and a few hard-edged
    shapes; values stay inside [0.05, 0.95] so clipping pipelines are no-ops.
    """
    rng = np.random.default_rng(seed)
    fy = np.fft.fftfreq(height)[:, None]
    fx = np.fft.fftfreq(width)[None, :]
    radius = np.hypot(fy, fx)
    radius[0, 0] = 1.0
    shaping = 1.0 / radius**1.2

    chans = []
    base_phase = rng.standard_normal((height, width))
    for c in range(channels):
        noise = 0.75 * base_phase + 0.25 * rng.standard_normal((height, width))
        spec = np.fft.fft2(noise) * shaping
        tex = np.fft.ifft2(spec).real
        tex = (tex - tex.mean()) / (tex.std() + 1e-12)
        chans.append(tex)
    img = np.stack(chans)

    yy = np.linspace(0.0, 1.0, height)[None, :, None]
    xx = np.linspace(0.0, 1.0, width)[None, None, :]
    img = 0.16 * img + 0.35 + 0.25 * yy + 0.15 * xx

    # hard-edged shapes give the spectrum its edge content
    for _ in range(6):
        r0 = int(rng.integers(0, height - height // 5))
        c0 = int(rng.integers(0, width - width // 5))
        rh = int(rng.integers(height // 12, height // 5))
        cw = int(rng.integers(width // 12, width // 5))
        level = rng.uniform(-0.22, 0.22, size=channels)
        img[:, r0 : r0 + rh, c0 : c0 + cw] += level[:, None, None]
    lo, hi = img.min(), img.max()
    img = 0.05 + 0.90 * (img - lo) / (hi - lo)
    return ImageF(img)


def paired_files(hr_dir: str | Path, sr_dir: str | Path, extensions: tuple[str, ...] = (".png", ".imgf")) -> list[tuple[Path, Path]]:
    """Match files across two directories by stem; raise listing any orphans."""
    def index(d: Path) -> dict[str, Path]:
        files = {}
        for p in sorted(d.iterdir()):
            if p.suffix.lower() in extensions:
                files[p.stem] = p
        return files

    hr_map = index(Path(hr_dir))
    sr_map = index(Path(sr_dir))
    if not hr_map or not sr_map:
        raise ShapeError(f"no images found in {hr_dir} / {sr_dir}")
    orphans = sorted(set(hr_map) ^ set(sr_map))
    if orphans:
        raise ShapeError("unpaired files: " + ", ".join(orphans))
    return [(hr_map[stem], sr_map[stem]) for stem in sorted(hr_map)]
