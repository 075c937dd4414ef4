"""Core raster and 1-D signal containers.

Images are planar row-major float rasters, shape (channels, height, width),
nominal range [0, 1] but never clamped: high-frequency injection and signed
residuals routinely leave the nominal range.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ShapeError

__all__ = ["ImageF", "Signal1D"]


@dataclass(frozen=True)
class ImageF:
    """Planar floating-point raster. ``data`` has shape (channels, height, width)."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim == 2:
            arr = arr[np.newaxis, :, :]
        if arr.ndim != 3:
            raise ShapeError(f"image data must be 2-D or 3-D, got ndim={arr.ndim}")
        if arr.shape[0] not in (1, 3):
            raise ShapeError(f"channel count must be 1 or 3, got {arr.shape[0]}")
        if arr.shape[1] < 1 or arr.shape[2] < 1:
            raise ShapeError(f"empty raster: shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ParameterError("image samples must be finite")
        object.__setattr__(self, "data", arr)

    @property
    def channels(self) -> int:
        return self.data.shape[0]

    @property
    def height(self) -> int:
        return self.data.shape[1]

    @property
    def width(self) -> int:
        return self.data.shape[2]

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.data.shape

    def channel(self, index: int) -> np.ndarray:
        """One channel as a 2-D (height, width) array."""
        return self.data[index]

    def map_channels(self, fn) -> "ImageF":
        """Apply ``fn(channel_2d) -> channel_2d`` to every channel."""
        return ImageF(np.stack([fn(self.data[c]) for c in range(self.channels)]))

    def same_shape(self, other: "ImageF") -> bool:
        return self.shape == other.shape

    @staticmethod
    def from_channels(channels: list[np.ndarray]) -> "ImageF":
        return ImageF(np.stack(channels))

    @staticmethod
    def constant(value: float, height: int, width: int, channels: int = 1) -> "ImageF":
        return ImageF(np.full((channels, height, width), float(value)))


@dataclass(frozen=True)
class Signal1D:
    """Uniformly sampled 1-D signal; ``sample_interval`` is the grid step in seconds."""

    samples: np.ndarray
    sample_interval: float = 1.0

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 1:
            raise ShapeError("signal must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(arr)):
            raise ParameterError("signal samples must be finite")
        if not (self.sample_interval > 0):
            raise ParameterError(f"sample_interval must be > 0, got {self.sample_interval}")
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self)) * self.sample_interval
