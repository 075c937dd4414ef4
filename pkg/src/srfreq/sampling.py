"""1-D impulse-train sampling and low-pass recovery.

"Continuous" signals are represented on a dense grid (the caller picks the
oversampling; 16x is the conventional default in the demos). Sampling keeps
every ratio-th dense sample and zeroes the rest, which mirrors multiplication
by an impulse train; recovery convolves with a windowed sinc and compensates
the 1/ratio gain loss of the zeroed samples.
"""

from __future__ import annotations

import numpy as np
from scipy import ndimage

from .errors import ParameterError
from .image import Signal1D
from .kernels import Window, sinc_omega, window_samples

__all__ = ["sample_signal", "recover_signal", "sinc_reconstruct"]


def sample_signal(x: Signal1D, period: float) -> Signal1D:
    """Impulse-train sampling on the dense grid: keep every (period/interval)-th sample."""
    ratio_f = period / x.sample_interval
    ratio = int(round(ratio_f))
    if ratio < 1 or abs(ratio_f - ratio) > 1e-9 * max(1.0, abs(ratio_f)):
        raise ParameterError(
            f"sampling period {period} is not an integer multiple of the grid step {x.sample_interval}"
        )
    out = np.zeros_like(x.samples)
    out[::ratio] = x.samples[::ratio]
    return Signal1D(out, x.sample_interval)


def recover_signal(
    sampled: Signal1D,
    cutoff_omega: float,
    ratio: int | None = None,
    window: Window = Window.HANN,
    radius: int | None = None,
) -> Signal1D:
    """Low-pass recovery of an impulse-train-sampled signal.

    ``ratio`` is the decimation ratio used by :func:`sample_signal`; when
    omitted it is inferred as round(pi / cutoff_omega), the matched cutoff
    for that ratio. ``radius`` defaults to 16 * ratio dense samples.
    """
    if not (0.0 < cutoff_omega <= np.pi):
        raise ParameterError(f"cutoff_omega must be in (0, pi], got {cutoff_omega}")
    if ratio is None:
        ratio = max(1, int(round(np.pi / cutoff_omega)))
    if ratio < 1:
        raise ParameterError(f"ratio must be >= 1, got {ratio}")
    if radius is None:
        radius = 16 * ratio
    n = np.arange(2 * radius + 1) - radius
    kernel = window_samples(window, 2 * radius + 1) * sinc_omega(cutoff_omega, n.astype(float))
    # length-preserving zero-padded convolution, robust to kernels longer
    # than the signal
    rec = ratio * ndimage.convolve1d(sampled.samples, kernel, mode="constant")
    return Signal1D(rec, sampled.sample_interval)


def sinc_reconstruct(sampled: Signal1D, ratio: int) -> Signal1D:
    """Ideal (untruncated) sinc-sum reconstruction from the kept samples.

    Direct evaluation of sum_n x[n*ratio] * sinc((t - n*ratio)/ratio) on the
    dense grid; O(N^2) and meant as a reference, not a fast path.
    """
    if ratio < 1:
        raise ParameterError(f"ratio must be >= 1, got {ratio}")
    t = np.arange(len(sampled), dtype=np.float64)
    keep = t[::ratio]
    vals = sampled.samples[::ratio]
    out = np.zeros(len(sampled))
    for tk, v in zip(keep, vals):
        out += v * np.sinc((t - tk) / ratio)
    return Signal1D(out, sampled.sample_interval)
