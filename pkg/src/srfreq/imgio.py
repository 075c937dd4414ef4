"""File formats: PNG in/out, the IMGF raw float raster, sidecars, manifests.

PNG carries display-range data only; anything signed or out of [0, 1]
(residuals, impulse responses) goes through IMGF v1: magic "IMGF", three
little-endian u32 (width, height, channels), then float32 samples, planar
row-major. A JSON sidecar (<path>.json) records provenance and the affine
display mapping for signed data.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import ParameterError, ShapeError
from .image import ImageF

__all__ = [
    "load_image",
    "save_image",
    "load_png",
    "save_png",
    "load_imgf",
    "save_imgf",
    "write_sidecar",
    "load_manifest",
    "save_manifest",
    "shift_key",
]

_IMGF_MAGIC = b"IMGF"


def load_png(path: str | Path) -> ImageF:
    """Decode an 8- or 16-bit PNG to [0, 1] floats (divide by the type max)."""
    with Image.open(path) as im:
        mode = im.mode
        if mode in ("P", "RGBA", "LA"):
            im = im.convert("RGB" if mode != "LA" else "L")
            mode = im.mode
        arr = np.asarray(im)
    if arr.dtype == np.uint8:
        data = arr.astype(np.float64) / 255.0
    elif arr.dtype in (np.uint16, np.int32):
        data = arr.astype(np.float64) / 65535.0
    else:
        raise ParameterError(f"unsupported PNG sample type {arr.dtype} in {path}")
    if data.ndim == 2:
        return ImageF(data[np.newaxis])
    return ImageF(np.moveaxis(data, 2, 0))


def save_png(img: ImageF, path: str | Path) -> None:
    """Write an 8-bit PNG; values are clipped to [0, 1] and quantized."""
    data = np.clip(img.data, 0.0, 1.0)
    quant = np.round(data * 255.0).astype(np.uint8)
    if img.channels == 1:
        Image.fromarray(quant[0], mode="L").save(path)
    else:
        Image.fromarray(np.moveaxis(quant, 0, 2), mode="RGB").save(path)


def save_imgf(img: ImageF, path: str | Path) -> None:
    p = Path(path)
    with open(p, "wb") as fh:
        fh.write(_IMGF_MAGIC)
        fh.write(struct.pack("<III", img.width, img.height, img.channels))
        fh.write(img.data.astype("<f4").tobytes(order="C"))


def load_imgf(path: str | Path) -> ImageF:
    raw = Path(path).read_bytes()
    if raw[:4] != _IMGF_MAGIC:
        raise ParameterError(f"{path} is not an IMGF v1 file (bad magic)")
    width, height, channels = struct.unpack("<III", raw[4:16])
    expected = width * height * channels * 4
    body = raw[16:]
    if len(body) != expected:
        raise ShapeError(
            f"{path}: payload is {len(body)} bytes, header implies {expected}"
        )
    data = np.frombuffer(body, dtype="<f4").astype(np.float64)
    return ImageF(data.reshape(channels, height, width))


def load_image(path: str | Path) -> ImageF:
    """Dispatch on extension: .png or .imgf."""
    suffix = Path(path).suffix.lower()
    if suffix == ".png":
        return load_png(path)
    if suffix == ".imgf":
        return load_imgf(path)
    raise ParameterError(f"unsupported image extension {suffix!r} for {path}")


def save_image(img: ImageF, path: str | Path) -> None:
    suffix = Path(path).suffix.lower()
    if suffix == ".png":
        save_png(img, path)
    elif suffix == ".imgf":
        save_imgf(img, path)
    else:
        raise ParameterError(f"unsupported image extension {suffix!r} for {path}")


def write_sidecar(path: str | Path, command: str, flags: dict, display_mapping: dict | None = None) -> None:
    """Provenance JSON next to a raster file."""
    meta = {"format": "IMGF v1" if str(path).endswith(".imgf") else "PNG",
            "command": command, "flags": flags}
    if display_mapping is not None:
        meta["display_mapping"] = display_mapping
    Path(str(path) + ".json").write_text(json.dumps(meta, indent=2) + "\n")


def shift_key(shift: tuple[int, int]) -> str:
    return f"{shift[0]},{shift[1]}"


def parse_shift_key(key: str) -> tuple[int, int]:
    r, c = key.split(",")
    return int(r), int(c)


def save_manifest(manifest: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(manifest, indent=2) + "\n")


def load_manifest(path: str | Path) -> dict:
    with open(path) as fh:
        manifest = json.load(fh)
    for key in ("scale", "probe", "shifts", "files"):
        if key not in manifest:
            raise ParameterError(f"manifest {path} missing required key {key!r}")
    return manifest
