"""2-D DFT plumbing: forward/inverse transforms and the DC-layout shift.

Convention: unnormalized forward transform, 1/(W*H) on the inverse, so that
Parseval reads sum |pixel|^2 = (1/(W*H)) * sum |bin|^2.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import LayoutError, ShapeError

__all__ = ["Spectrum2D", "dft2", "idft2", "fftshift"]


@dataclass(frozen=True)
class Spectrum2D:
    """Complex 2-D DFT of one channel.

    ``dc_centered`` is False when DC sits at bin (0, 0) (raw DFT layout) and
    True when it sits at (H//2, W//2) (display layout).
    """

    data: np.ndarray
    dc_centered: bool = False

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.complex128)
        if arr.ndim != 2 or arr.size == 0:
            raise ShapeError(f"spectrum must be a nonempty 2-D array, got shape {arr.shape}")
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]


def dft2(channel: np.ndarray) -> Spectrum2D:
    """Unnormalized forward DFT of a real 2-D channel; DC at bin (0, 0)."""
    arr = np.asarray(channel, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ShapeError(f"dft2 needs a nonempty 2-D array, got shape {arr.shape}")
    return Spectrum2D(np.fft.fft2(arr), dc_centered=False)


def idft2(spectrum: Spectrum2D, imag_tol: float = 1e-6) -> np.ndarray:
    """Inverse DFT (applies 1/(W*H)); returns the real part.

    Warns when the imaginary residue exceeds ``imag_tol`` relative to the
    real magnitude, which indicates the spectrum was not conjugate symmetric.
    """
    if spectrum.dc_centered:
        raise LayoutError("idft2 expects DC at (0, 0); apply fftshift to undo centering")
    full = np.fft.ifft2(spectrum.data)
    max_real = np.max(np.abs(full.real))
    max_imag = np.max(np.abs(full.imag))
    if max_imag > imag_tol * max(max_real, np.finfo(np.float64).tiny):
        warnings.warn(
            f"idft2: imaginary residue {max_imag:.3e} exceeds {imag_tol:.1e} x max|real|",
            RuntimeWarning,
            stacklevel=2,
        )
    return full.real


def fftshift(spectrum: Spectrum2D) -> Spectrum2D:
    """Toggle the DC layout by a (H//2, W//2) circular shift.

    Applying it twice is the identity for any size: the second call sees the
    flipped flag and performs the inverse shift.
    """
    if spectrum.dc_centered:
        return Spectrum2D(np.fft.ifftshift(spectrum.data), dc_centered=False)
    return Spectrum2D(np.fft.fftshift(spectrum.data), dc_centered=True)
