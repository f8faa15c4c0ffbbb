"""Minimal PNG input/output.

Writing is done by hand (struct + zlib) so that the emitted bytes depend
only on the pixel data: fixed bit depth (8), fixed color type (RGB),
no interlacing, no ancillary chunks, fixed compression level.  Two runs
over the same array produce identical files, which the determinism tests
rely on.

Reading goes through Pillow and accepts anything Pillow can decode;
the result is always converted to 8-bit RGB (alpha is dropped).
"""

from __future__ import annotations

import struct
import zlib

import numpy as np
from PIL import Image

_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_COMPRESSION_LEVEL = 6


def _chunk(tag: bytes, payload: bytes) -> bytes:
    crc = zlib.crc32(tag + payload) & 0xFFFFFFFF
    return struct.pack(">I", len(payload)) + tag + payload + struct.pack(">I", crc)


def write_png(path: str, pixels: np.ndarray) -> None:
    """Write an (H, W, 3) uint8 array as a non-interlaced 8-bit RGB PNG."""
    arr = np.asarray(pixels)
    if arr.ndim != 3 or arr.shape[2] != 3 or arr.dtype != np.uint8:
        raise ValueError(f"expected (H, W, 3) uint8 array, got {arr.shape} {arr.dtype}")
    height, width = arr.shape[:2]
    ihdr = struct.pack(">IIBBBBB", width, height, 8, 2, 0, 0, 0)
    # Filter byte 0 (None) in front of every scanline.
    raw = b"".join(b"\x00" + arr[row].tobytes() for row in range(height))
    idat = zlib.compress(raw, _COMPRESSION_LEVEL)
    with open(path, "wb") as fh:
        fh.write(_SIGNATURE)
        fh.write(_chunk(b"IHDR", ihdr))
        fh.write(_chunk(b"IDAT", idat))
        fh.write(_chunk(b"IEND", b""))


def png_bytes(pixels: np.ndarray) -> bytes:
    """Return the exact byte string write_png would put on disk."""
    arr = np.asarray(pixels)
    if arr.ndim != 3 or arr.shape[2] != 3 or arr.dtype != np.uint8:
        raise ValueError(f"expected (H, W, 3) uint8 array, got {arr.shape} {arr.dtype}")
    height, width = arr.shape[:2]
    ihdr = struct.pack(">IIBBBBB", width, height, 8, 2, 0, 0, 0)
    raw = b"".join(b"\x00" + arr[row].tobytes() for row in range(height))
    idat = zlib.compress(raw, _COMPRESSION_LEVEL)
    return _SIGNATURE + _chunk(b"IHDR", ihdr) + _chunk(b"IDAT", idat) + _chunk(b"IEND", b"")


def read_png(path: str) -> np.ndarray:
    """Read an image file into an (H, W, 3) uint8 array.

    RGBA input loses its alpha channel; grayscale and palette images are
    expanded to RGB.
    """
    with Image.open(path) as img:
        rgb = img.convert("RGB")
        return np.asarray(rgb, dtype=np.uint8).copy()
