"""Spectrum views, zero-padding extension checks, and spectral embedding.

The embedding writes a binary mask into the magnitude of high-frequency bins
while preserving conjugate symmetry, producing a real image whose spectral
power distribution is visibly disturbed while its pixel structure barely
changes (the SSIM-blind / distribution-sensitive split).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import signal as _signal

from .errors import ParameterError, ShapeError
from .image import ImageF, Signal1D
from .kernels import Kernel
from .transforms import Spectrum2D, dft2, fftshift, idft2

__all__ = [
    "SpectrumView",
    "spectrum_view",
    "verify_periodic_extension",
    "embed_spectral_message",
    "default_embed_strength",
    "default_message_mask",
    "conv2",
]


@dataclass(frozen=True)
class SpectrumView:
    """Display-ready amplitude/phase maps, DC centered.

    ``amplitude`` is log(1 + |bin|) (nonnegative); ``phase`` is arg(bin) in
    (-pi, pi].
    """

    amplitude: np.ndarray
    phase: np.ndarray
    source_height: int
    source_width: int


def spectrum_view(channel: np.ndarray) -> SpectrumView:
    """Log-amplitude and phase of a channel's spectrum, DC at the center."""
    spec = fftshift(dft2(channel))
    return SpectrumView(
        amplitude=np.log1p(np.abs(spec.data)),
        phase=np.angle(spec.data),
        source_height=spec.height,
        source_width=spec.width,
    )


def verify_periodic_extension(samples: np.ndarray | Signal1D, factor: int) -> float:
    """Max deviation between DFT(zero-interleaved x) and the X[k mod N] extension.

    Zero-interleaving a length-N signal by an integer factor replicates its
    spectrum periodically; this returns max_k |X'[k] - X[k mod N]|, which is
    zero up to roundoff.
    """
    if factor < 2:
        raise ParameterError(f"factor must be >= 2, got {factor}")
    if isinstance(samples, Signal1D):
        samples = samples.samples
    x = np.asarray(samples, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise ShapeError("expected a nonempty 1-D signal")
    n = x.size
    stretched = np.zeros(n * factor)
    stretched[::factor] = x
    big = np.fft.fft(stretched)
    base = np.fft.fft(x)
    extended = base[np.arange(n * factor) % n]
    return float(np.max(np.abs(big - extended)))


def default_embed_strength(img: ImageF, band_radius: int) -> float:
    """Documented default strength: 5% of the peak magnitude outside the band."""
    peaks = []
    for c in range(img.channels):
        spec = fftshift(dft2(img.channel(c)))
        outside = _annulus_mask(spec.height, spec.width, band_radius)
        if not outside.any():
            raise ParameterError("band_radius leaves no bins outside the band")
        peaks.append(np.max(np.abs(spec.data[outside])))
    return 0.05 * float(max(peaks))


def _annulus_mask(height: int, width: int, band_radius: int) -> np.ndarray:
    cy, cx = height // 2, width // 2
    yy, xx = np.ogrid[:height, :width]
    return np.hypot(yy - cy, xx - cx) > band_radius


def default_message_mask(height: int, width: int, band_radius: int) -> np.ndarray:
    """Glyph-like default payload: axis bars and a diagonal hugging the band edge."""
    cy, cx = height // 2, width // 2
    yy, xx = np.ogrid[:height, :width]
    rad = np.hypot(yy - cy, xx - cx)
    ring = (rad > band_radius + 2) & (rad < band_radius + 14)
    mask = np.zeros((height, width), dtype=bool)
    mask |= ring & (np.abs(yy - cy) < 4)
    mask |= ring & (np.abs(xx - cx) < 4)
    mask |= ring & (np.abs((yy - cy) - (xx - cx)) < 4)
    return mask


def embed_spectral_message(
    img: ImageF,
    message: np.ndarray,
    band_radius: int,
    strength: float,
) -> ImageF:
    """Raise spectral magnitudes at masked bins (and conjugate partners).

    ``message`` is a binary mask in DC-centered layout, the same size as the
    image; every masked bin must lie strictly outside ``band_radius`` bins
    from DC. ``strength`` is the magnitude offset added at each masked bin;
    0 returns the input bit-exactly. The output stays real because partners
    receive the conjugate value and self-conjugate bins stay real under a
    magnitude offset.
    """
    if strength < 0:
        raise ParameterError(f"strength must be >= 0, got {strength}")
    mask = np.asarray(message, dtype=bool)
    h, w = img.height, img.width
    if mask.shape != (h, w):
        raise ShapeError(f"mask shape {mask.shape} must match image {(h, w)}")
    if strength == 0:
        return img
    allowed = _annulus_mask(h, w, band_radius)
    if np.any(mask & ~allowed):
        raise ParameterError(
            f"mask touches bins within band_radius={band_radius} of DC (incl. DC itself)"
        )

    # mask positions back in raw DFT layout
    centered = np.zeros((h, w), dtype=bool)
    centered[mask] = True
    raw_mask = np.fft.ifftshift(centered)
    rows, cols = np.nonzero(raw_mask)

    out = []
    for c in range(img.channels):
        spec = dft2(img.channel(c)).data.copy()
        done = np.zeros((h, w), dtype=bool)
        for r, q in zip(rows, cols):
            if done[r, q]:
                continue
            pr, pq = (-r) % h, (-q) % w
            v = spec[r, q]
            mag = abs(v)
            new = v * ((mag + strength) / mag) if mag > 0 else complex(strength, 0.0)
            spec[r, q] = new
            spec[pr, pq] = np.conj(new)
            done[r, q] = True
            done[pr, pq] = True
        out.append(idft2(Spectrum2D(spec, dc_centered=False)))
    return ImageF(np.stack(out))


def conv2(channel: np.ndarray, kernel: Kernel | np.ndarray, padding: str = "zero") -> np.ndarray:
    """True 2-D convolution (index-reversed kernel), same-size output.

    ``padding`` is "zero" or "reflect" (symmetric edge duplication). Direct
    summation, so shift equivariance on interiors holds bit-exactly.
    """
    taps = kernel.taps if isinstance(kernel, Kernel) else np.asarray(kernel, dtype=np.float64)
    x = np.asarray(channel, dtype=np.float64)
    if x.ndim != 2 or taps.ndim != 2:
        raise ShapeError("conv2 expects 2-D input and kernel")
    kh, kw = taps.shape
    if kh % 2 == 0 or kw % 2 == 0:
        raise ParameterError(f"kernel sides must be odd, got {taps.shape}")
    if padding == "zero":
        padded = np.pad(x, ((kh // 2,) * 2, (kw // 2,) * 2), mode="constant")
    elif padding == "reflect":
        # symmetric padding cannot exceed the source extent
        if kh // 2 > x.shape[0] or kw // 2 > x.shape[1]:
            raise ParameterError(
                f"kernel {taps.shape} larger than reflect-padded input {x.shape}"
            )
        padded = np.pad(x, ((kh // 2,) * 2, (kw // 2,) * 2), mode="symmetric")
    else:
        raise ParameterError(f"unknown padding {padding!r}")
    return _signal.convolve(padded, taps, mode="valid", method="direct")
