"""Image-pair quality metrics: distribution-based spectral similarity,
PSNR, SSIM, and l1/l2 norms in both domains.

The spectral-distribution score normalizes each channel to zero mean / unit
variance, takes the DFT, and integrates the complex spectrum outward from DC
in each quadrant (cumulative rectangle sums anchored at the center bin). The
score is -10*log10 of the energy ratio between the cumulative-difference map
and the reference's cumulative map; identical distributions give +inf.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import DegenerateInputError, ParameterError, ShapeError
from .image import ImageF
from .transforms import dft2, fftshift

__all__ = [
    "DistributionMap",
    "MetricReport",
    "normalize_image",
    "distribution_map",
    "fsds",
    "psnr",
    "ssim",
    "norm_metrics",
    "metric_report",
    "to_luma",
]

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03


@dataclass(frozen=True)
class DistributionMap:
    """Cumulative complex spectral-power map, DC-centered.

    Entry (y, x) is the complex sum of spectrum bins over the axis-aligned
    rectangle spanned by the center bin and (y, x); the center entry equals
    the center bin itself.
    """

    data: np.ndarray
    channel_index: int

    @property
    def center(self) -> tuple[int, int]:
        return self.data.shape[0] // 2, self.data.shape[1] // 2


@dataclass(frozen=True)
class MetricReport:
    """Metric bundle for one image pair; dB values may be +inf sentinels."""

    psnr: float
    ssim: float
    fsds: float
    l1_freq: float
    l2_freq: float
    l1_spatial: float
    l2_spatial: float

    def to_json(self) -> str:
        def enc(v: float):
            if math.isinf(v):
                return "inf"
            return float(f"{v:.6g}")

        return json.dumps({k: enc(v) for k, v in vars(self).items()})


def _check_same_shape(a: ImageF, b: ImageF) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"image shapes differ: {a.shape} vs {b.shape}")


def normalize_image(img: ImageF) -> ImageF:
    """Per-channel zero mean, unit variance (population sigma)."""
    out = []
    for c in range(img.channels):
        ch = img.channel(c)
        sigma = ch.std()
        if sigma == 0:
            raise DegenerateInputError(f"channel {c} is constant; normalization undefined")
        out.append((ch - ch.mean()) / sigma)
    return ImageF(np.stack(out))


def _cumulate_from_center(arr: np.ndarray) -> np.ndarray:
    """Directional cumulative sums outward from the center bin, per quadrant.

    The center row/column belongs to all adjacent quadrants, so the running
    sums in both directions start at the center element.
    """
    cy, cx = arr.shape[0] // 2, arr.shape[1] // 2
    rows = np.empty_like(arr)
    rows[cy:] = np.cumsum(arr[cy:], axis=0)
    rows[: cy + 1] = np.cumsum(arr[: cy + 1][::-1], axis=0)[::-1]
    full = np.empty_like(rows)
    full[:, cx:] = np.cumsum(rows[:, cx:], axis=1)
    full[:, : cx + 1] = np.cumsum(rows[:, : cx + 1][:, ::-1], axis=1)[:, ::-1]
    return full


def distribution_map(img: ImageF, channel: int = 0) -> DistributionMap:
    """Cumulative spectral map of one channel (normalizes internally)."""
    if not 0 <= channel < img.channels:
        raise ParameterError(f"channel {channel} out of range for {img.channels}-channel image")
    ch = img.channel(channel)
    sigma = ch.std()
    if sigma == 0:
        raise DegenerateInputError(f"channel {channel} is constant; normalization undefined")
    spec = fftshift(dft2((ch - ch.mean()) / sigma))
    return DistributionMap(_cumulate_from_center(spec.data), channel)


def fsds(hr: ImageF, sr: ImageF) -> float:
    """Spectral-distribution similarity in dB; +inf when distributions match.

    Asymmetric by construction: the denominator is the reference (first
    argument) map's energy.
    """
    _check_same_shape(hr, sr)
    vals = []
    for c in range(hr.channels):
        d_hr = distribution_map(hr, c).data
        d_sr = distribution_map(sr, c).data
        num = float(np.sum(np.abs(d_hr - d_sr) ** 2))
        den = float(np.sum(np.abs(d_hr) ** 2))
        vals.append(math.inf if num == 0.0 else -10.0 * math.log10(num / den))
    return float(np.mean(vals))


def psnr(a: ImageF, b: ImageF, peak: float = 1.0) -> float:
    """10*log10(peak^2 / MSE) over all samples; +inf for identical images."""
    _check_same_shape(a, b)
    if peak <= 0:
        raise ParameterError(f"peak must be > 0, got {peak}")
    mse = float(np.mean((a.data - b.data) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(peak * peak / mse)


def _gaussian_window(n: int = SSIM_WINDOW, sigma: float = SSIM_SIGMA) -> np.ndarray:
    x = np.arange(n) - (n - 1) / 2.0
    w = np.exp(-(x**2) / (2.0 * sigma**2))
    return w / w.sum()


def _filter_valid(x: np.ndarray, w: np.ndarray) -> np.ndarray:
    m = len(w) // 2
    y = ndimage.correlate1d(x, w, axis=0, mode="constant")
    y = ndimage.correlate1d(y, w, axis=1, mode="constant")
    return y[m:-m, m:-m]


def ssim(a: ImageF, b: ImageF, data_range: float = 1.0) -> float:
    """Single-scale SSIM, 11x11 Gaussian window (sigma 1.5), K1/K2 = 0.01/0.03.

    Statistics use the Gaussian-weighted (not sample-corrected) moments, maps
    are evaluated on the valid region only, and the result is the mean over
    pixels and channels.
    """
    _check_same_shape(a, b)
    if a.height < SSIM_WINDOW or a.width < SSIM_WINDOW:
        raise ParameterError(
            f"images must be at least {SSIM_WINDOW}x{SSIM_WINDOW} for SSIM, got {a.height}x{a.width}"
        )
    w = _gaussian_window()
    c1 = (SSIM_K1 * data_range) ** 2
    c2 = (SSIM_K2 * data_range) ** 2
    vals = []
    for c in range(a.channels):
        x = a.channel(c)
        y = b.channel(c)
        mu_x = _filter_valid(x, w)
        mu_y = _filter_valid(y, w)
        var_x = _filter_valid(x * x, w) - mu_x**2
        var_y = _filter_valid(y * y, w) - mu_y**2
        cov = _filter_valid(x * y, w) - mu_x * mu_y
        num = (2 * mu_x * mu_y + c1) * (2 * cov + c2)
        den = (mu_x**2 + mu_y**2 + c1) * (var_x + var_y + c2)
        vals.append(np.mean(num / den))
    return float(np.mean(vals))


def norm_metrics(hr: ImageF, sr: ImageF) -> tuple[float, float, float, float]:
    """(l1_freq, l2_freq, l1_spatial, l2_spatial) of the difference image.

    l1 norms are means (per sample / per bin); l2 norms omit the mean, and the
    frequency-domain l2 carries a 1/sqrt(W*H) factor so Parseval makes it
    equal the spatial one.
    """
    _check_same_shape(hr, sr)
    diff = hr.data - sr.data
    l1_spatial = float(np.mean(np.abs(diff)))
    l2_spatial = float(np.sqrt(np.sum(diff**2)))
    spectra = [dft2(diff[c]).data for c in range(diff.shape[0])]
    mags = np.abs(np.stack(spectra))
    l1_freq = float(np.mean(mags))
    l2_freq = float(np.sqrt(np.sum(mags**2) / (hr.width * hr.height)))
    return l1_freq, l2_freq, l1_spatial, l2_spatial


def metric_report(hr: ImageF, sr: ImageF) -> MetricReport:
    """All metrics for one pair; degenerate FSDS inputs propagate as errors."""
    l1f, l2f, l1s, l2s = norm_metrics(hr, sr)
    return MetricReport(
        psnr=psnr(hr, sr),
        ssim=ssim(hr, sr),
        fsds=fsds(hr, sr),
        l1_freq=l1f,
        l2_freq=l2f,
        l1_spatial=l1s,
        l2_spatial=l2s,
    )


def to_luma(img: ImageF) -> ImageF:
    """BT.601 luma reduction (no-op for single-channel images)."""
    if img.channels == 1:
        return img
    r, g, b = img.data
    return ImageF((0.299 * r + 0.587 * g + 0.114 * b)[np.newaxis])
