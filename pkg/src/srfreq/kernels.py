"""Windowed-sinc kernels and window functions.

The 2-D kernel is separable: taps[y][x] = w(y) w(x) sinc_w(y-r) sinc_w(x-r),
with sinc_w(t) = sin(w t) / (pi t) and the limit value w/pi at t = 0. A
cutoff of pi makes the kernel a discrete delta (sin(pi n) = 0 off center).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

__all__ = ["Window", "Kernel", "window_eval", "window_samples", "sinc_omega", "make_sinc_kernel"]


class Window(enum.Enum):
    RECTANGULAR = "rectangular"
    HANN = "hann"
    HAMMING = "hamming"
    BLACKMAN = "blackman"

    @classmethod
    def parse(cls, name: str) -> "Window":
        try:
            return cls(name.lower())
        except ValueError:
            raise ParameterError(
                f"unknown window {name!r}; choose from "
                + ", ".join(w.value for w in cls)
            ) from None


@dataclass(frozen=True)
class Kernel:
    """Square 2-D convolution kernel with odd side length 2*radius + 1."""

    taps: np.ndarray
    cutoff_omega: float
    window: Window
    radius: int

    def __post_init__(self):
        taps = np.asarray(self.taps, dtype=np.float64)
        side = 2 * self.radius + 1
        if taps.shape != (side, side):
            raise ParameterError(
                f"kernel taps must be {side}x{side} for radius {self.radius}, got {taps.shape}"
            )
        object.__setattr__(self, "taps", taps)

    @property
    def side(self) -> int:
        return 2 * self.radius + 1


def window_eval(window: Window, n: int, length: int) -> float:
    """Window weight at index ``n`` of an ``length``-point window."""
    if not 0 <= n < length:
        raise IndexError(f"window index {n} out of range for length {length}")
    if window is Window.RECTANGULAR:
        return 1.0
    if length == 1:
        # cosine forms are 0/0 at N=1; a one-point window is the identity
        return 1.0
    x = 2.0 * np.pi * n / (length - 1)
    if window is Window.HANN:
        return 0.5 - 0.5 * np.cos(x)
    if window is Window.HAMMING:
        return 0.54 - 0.46 * np.cos(x)
    if window is Window.BLACKMAN:
        return 0.42 - 0.5 * np.cos(x) + 0.08 * np.cos(2.0 * x)
    raise ParameterError(f"unknown window {window!r}")


def window_samples(window: Window, length: int) -> np.ndarray:
    # mirror the first half so w[n] == w[N-1-n] holds bit-exactly
    # (cos at mirrored arguments differs by an ulp otherwise)
    w = np.array([window_eval(window, n, length) for n in range(length)])
    half = length // 2
    w[length - half :] = w[:half][::-1]
    return w


def sinc_omega(omega: float, t: np.ndarray) -> np.ndarray:
    """sin(omega t) / (pi t), with the limit value omega/pi at t = 0."""
    t = np.asarray(t, dtype=np.float64)
    out = np.full(t.shape, omega / np.pi)
    nz = t != 0
    out[nz] = np.sin(omega * t[nz]) / (np.pi * t[nz])
    return out


def make_sinc_kernel(cutoff_omega: float, window: Window = Window.HANN, radius: int = 4) -> Kernel:
    """Separable windowed-sinc low-pass kernel with the given cutoff (rad/sample)."""
    if not (0.0 < cutoff_omega <= np.pi):
        raise ParameterError(f"cutoff_omega must be in (0, pi], got {cutoff_omega}")
    if radius < 1:
        raise ParameterError(f"radius must be >= 1, got {radius}")
    n = np.arange(2 * radius + 1)
    profile = window_samples(window, 2 * radius + 1) * sinc_omega(cutoff_omega, n - radius)
    return Kernel(np.outer(profile, profile), float(cutoff_omega), window, radius)
