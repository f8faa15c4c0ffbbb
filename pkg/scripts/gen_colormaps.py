#!/usr/bin/env python3
"""Regenerate the color maps shipped in src/symplane/designs/maps/.

Both maps are pure trig fields, so the output is bit-for-bit
reproducible.  tides.png is seamless: every channel is a sum of
sinusoids whose periods divide the full map span, so sampling with a
wrap policy equal to that span never shows a seam.  meadow.png is a
busier field for clamp/black designs.

Usage: python scripts/gen_colormaps.py
"""

from __future__ import annotations

import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from symplane.pngio import write_png  # noqa: E402

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "symplane", "designs", "maps")

TIDES_SIZE = 512
TIDES_SCALE = 2000.0  # map window is [-2000, 2000]^2, span 4000


def tides() -> np.ndarray:
    # pixel (r, c) sits at w = (u, v) under the same rounding the sampler
    # uses: u ranges over rows, v over columns
    idx = np.arange(TIDES_SIZE, dtype=np.float64)
    step = 2.0 * TIDES_SCALE / TIDES_SIZE
    u = (idx - TIDES_SIZE // 2)[:, None] * step
    v = (idx - TIDES_SIZE // 2)[None, :] * step
    span = 2.0 * TIDES_SCALE
    tau = 2.0 * np.pi / span

    r = 152 + 46 * np.sin(tau * u) + 22 * np.sin(tau * v + 1.3)
    g = 128 + 46 * np.sin(tau * (u + v) + 2.1) + 8 * np.sin(4 * tau * u + 0.5)
    b = 158 + 46 * np.sin(tau * v + 4.0) + 22 * np.sin(tau * (u - v) + 2.6)
    img = np.stack([r, g, b], axis=-1)
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


MEADOW_SIZE = 256
MEADOW_SCALE = 4.0


def meadow() -> np.ndarray:
    idx = np.arange(MEADOW_SIZE, dtype=np.float64)
    step = 2.0 * MEADOW_SCALE / MEADOW_SIZE
    u = (idx - MEADOW_SIZE // 2)[:, None] * step
    v = (idx - MEADOW_SIZE // 2)[None, :] * step

    r = 128 + 70 * np.sin(1.3 * u + 0.9 * v + 0.5) + 30 * np.cos(2.7 * u - 1.9 * v)
    g = 128 + 70 * np.sin(-0.8 * u + 1.7 * v + 2.5) + 30 * np.cos(1.1 * u + 2.3 * v + 1.0)
    b = 128 + 70 * np.cos(0.9 * u + 1.1 * v + 4.0) + 30 * np.sin(2.2 * u - 1.4 * v + 3.0)
    img = np.stack([r, g, b], axis=-1)
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def main() -> None:
    os.makedirs(OUT_DIR, exist_ok=True)
    write_png(os.path.join(OUT_DIR, "tides.png"), tides())
    write_png(os.path.join(OUT_DIR, "meadow.png"), meadow())
    print(f"wrote tides.png and meadow.png to {OUT_DIR}")


if __name__ == "__main__":
    main()
