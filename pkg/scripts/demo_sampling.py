#!/usr/bin/env python3
"""1-D sampling/recovery demo: below-Nyquist recovery versus aliasing.

Writes sampling_demo.png with three panels: the dense signal, its
impulse-train samples, and the low-pass recovery, for a recoverable and an
aliased case.
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from srfreq.image import Signal1D
from srfreq.sampling import recover_signal, sample_signal

OVERSAMPLE = 16
RATIO = 4  # sample rate = OVERSAMPLE / RATIO Hz


def burst(freq_hz, duration=16.0):
    dt = 1.0 / OVERSAMPLE
    t = np.arange(0.0, duration, dt)
    envelope = np.exp(-0.5 * ((t - duration / 2) / (duration / 6.4)) ** 2)
    return t, Signal1D(np.sin(2 * np.pi * freq_hz * t) * envelope, dt)


def main() -> None:
    fig, axes = plt.subplots(2, 3, figsize=(13, 6), sharex=True)
    for row, freq in enumerate([1.0, 3.0]):  # Nyquist here is 2 Hz
        t, x = burst(freq)
        sampled = sample_signal(x, RATIO / OVERSAMPLE)
        rec = recover_signal(sampled, np.pi / RATIO, ratio=RATIO)
        err = np.max(np.abs(rec.samples - x.samples)[64:-64])
        axes[row, 0].plot(t, x.samples, lw=0.8)
        axes[row, 0].set_title(f"{freq:g} Hz dense signal")
        axes[row, 1].stem(t[::RATIO], sampled.samples[::RATIO], markerfmt=".", basefmt=" ")
        axes[row, 1].set_title(f"sampled at {OVERSAMPLE / RATIO:g} Hz")
        axes[row, 2].plot(t, rec.samples, lw=0.8, label="recovered")
        axes[row, 2].plot(t, x.samples, lw=0.5, ls="--", label="original")
        axes[row, 2].set_title(f"low-pass recovery (max err {err:.3f})")
        axes[row, 2].legend(fontsize=7)
    fig.tight_layout()
    out_dir = Path(__file__).resolve().parents[1] / "out"
    out_dir.mkdir(exist_ok=True)
    out = out_dir / "sampling_demo.png"
    fig.savefig(out, dpi=110)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
