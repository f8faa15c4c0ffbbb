"""Rasterization: sample a complex function on a pixel grid and colorize.

Pixel (row, col) of the output samples the plane at the pixel center:

    x = x_min + (col + 0.5) * dx        dx = (x_max - x_min) / width_px
    y = y_max - (row + 0.5) * dy        dy = (y_max - y_min) / height_px

so row 0 is the top of the window.  The function value at each center
picks a color out of the color map (see colors.sample_colormap); pixels
are independent, which makes the image deterministic no matter how many
worker threads split the scanline bands.

Overlays stamp curves on top of a finished image with a hard round
brush, no antialiasing: a stroke of width s never touches pixels
farther than s/2 + 1 px from the curve.

image_rotation_residual is the oracle used to check rotational symmetry
end to end: rotate the image about its center with nearest-neighbor
sampling and count pixels whose color moved by more than a tolerance.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .colors import ColorMap, OutOfRange, RgbColor, sample_colormap_array
from .halfplane import EuclideanCircle, Horocycle, Ray, Semicircle

_BAND_ROWS = 64


@dataclass(frozen=True)
class Window:
    """Axis-aligned view rectangle plus output resolution."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    width_px: int
    height_px: int

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError("window must have positive extent")
        if self.width_px < 1 or self.height_px < 1:
            raise ValueError("resolution must be at least 1x1")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.width_px

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / self.height_px

    def grid(self, row_start: int = 0, row_stop: int | None = None) -> np.ndarray:
        """Complex pixel centers for rows [row_start, row_stop)."""
        if row_stop is None:
            row_stop = self.height_px
        rows = np.arange(row_start, row_stop, dtype=np.float64)
        cols = np.arange(self.width_px, dtype=np.float64)
        y = self.y_max - (rows + 0.5) * self.dy
        x = self.x_min + (cols + 0.5) * self.dx
        return x[None, :] + 1j * y[:, None]

    def to_pixel(self, z: complex) -> tuple[float, float]:
        """(row, col) coordinates of a plane point; pixel centers land on ints."""
        col = (np.real(z) - self.x_min) / self.dx - 0.5
        row = (self.y_max - np.imag(z)) / self.dy - 0.5
        return (row, col)


def render(
    f: Callable[[np.ndarray], np.ndarray],
    window: Window,
    cmap: ColorMap,
    policy: OutOfRange,
    workers: int = 1,
) -> np.ndarray:
    """Domain-color f over the window; returns (H, W, 3) uint8.

    f gets a complex array of pixel centers and must return values of
    the same shape.  Rows are processed in fixed bands; because every
    pixel is independent the output bytes do not depend on workers.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    out = np.empty((window.height_px, window.width_px, 3), dtype=np.uint8)
    bands = [
        (start, min(start + _BAND_ROWS, window.height_px))
        for start in range(0, window.height_px, _BAND_ROWS)
    ]

    def paint(band: tuple[int, int]) -> None:
        start, stop = band
        z = window.grid(start, stop)
        with np.errstate(all="ignore"):
            w = f(z)
        out[start:stop] = sample_colormap_array(w, cmap, policy)

    if workers == 1:
        for band in bands:
            paint(band)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(paint, bands))
    return out


# ---------------------------------------------------------------------------
# Overlays


@dataclass(frozen=True)
class VerticalLine:
    """Full-height line Re z = u (a geodesic when the window sits in H)."""

    u: float


@dataclass(frozen=True)
class LatticeGrid:
    """Lines of the lattice {a*u + b*v} for integers a, b."""

    u: complex
    v: complex

    def __post_init__(self):
        u, v = complex(self.u), complex(self.v)
        if u == 0 or v == 0 or (u.real * v.imag - u.imag * v.real) == 0:
            raise ValueError("lattice vectors must be independent")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)


OverlayShape = Union[Ray, Semicircle, Horocycle, EuclideanCircle, VerticalLine, LatticeGrid]


@dataclass(frozen=True)
class Overlay:
    shape: OverlayShape
    color: RgbColor = (255, 255, 255)
    stroke_px: int = 1

    def __post_init__(self):
        if self.stroke_px < 1:
            raise ValueError("stroke width must be >= 1")


def _circle_points(window: Window, center: complex, radius: float, half: bool) -> np.ndarray:
    arc = math.pi if half else 2.0 * math.pi
    px = radius * arc / min(window.dx, window.dy)
    count = int(min(max(64, 4 * px), 400000))
    theta = np.linspace(0.0, arc, count, endpoint=not half)
    return center + radius * np.exp(1j * theta)


def _segment_points(window: Window, z0: complex, z1: complex) -> np.ndarray:
    r0, c0 = window.to_pixel(z0)
    r1, c1 = window.to_pixel(z1)
    px = math.hypot(r1 - r0, c1 - c0)
    count = int(min(max(16, 4 * px), 400000))
    t = np.linspace(0.0, 1.0, count)
    return z0 + t * (z1 - z0)


def _shape_points(window: Window, shape: OverlayShape) -> np.ndarray:
    if isinstance(shape, VerticalLine):
        lo = complex(shape.u, window.y_min)
        hi = complex(shape.u, window.y_max)
        return _segment_points(window, lo, hi)
    if isinstance(shape, Ray):
        top = max(window.y_max, window.dy)
        lo = complex(shape.u, max(window.y_min, 1e-12))
        if lo.imag >= top:
            return np.empty(0, dtype=np.complex128)
        return _segment_points(window, lo, complex(shape.u, top))
    if isinstance(shape, Semicircle):
        return _circle_points(window, complex(shape.u, 0.0), shape.r, half=True)
    if isinstance(shape, Horocycle):
        return _circle_points(window, shape.center, shape.r, half=False)
    if isinstance(shape, EuclideanCircle):
        if shape.radius == 0:
            return np.asarray([shape.center], dtype=np.complex128)
        return _circle_points(window, shape.center, shape.radius, half=False)
    if isinstance(shape, LatticeGrid):
        u, v = shape.u, shape.v
        corners = [
            complex(window.x_min, window.y_min),
            complex(window.x_min, window.y_max),
            complex(window.x_max, window.y_min),
            complex(window.x_max, window.y_max),
        ]
        reach = max(abs(corner) for corner in corners)
        count_u = min(int(reach / _line_spacing(u, v)) + 2, 128)
        count_v = min(int(reach / _line_spacing(v, u)) + 2, 128)
        span_v = reach / abs(v) + 1.0
        span_u = reach / abs(u) + 1.0
        chunks = []
        for a in range(-count_u, count_u + 1):
            chunks.append(_segment_points(window, a * u - span_v * v, a * u + span_v * v))
        for b in range(-count_v, count_v + 1):
            chunks.append(_segment_points(window, b * v - span_u * u, b * v + span_u * u))
        return np.concatenate(chunks)
    raise TypeError(f"not an overlay shape: {shape!r}")


def _line_spacing(step: complex, along: complex) -> float:
    """Perpendicular distance between adjacent lattice lines."""
    cross = abs(step.real * along.imag - step.imag * along.real)
    return max(cross / abs(along), 1e-9)


def _brush(stroke_px: int) -> np.ndarray:
    half = stroke_px / 2.0
    reach = int(math.floor(half))
    offsets = [
        (di, dj)
        for di in range(-reach, reach + 1)
        for dj in range(-reach, reach + 1)
        if di * di + dj * dj <= half * half
    ]
    return np.asarray(offsets, dtype=np.int64).reshape(-1, 2)


def draw_overlays(img: np.ndarray, window: Window, overlays: Sequence[Overlay]) -> np.ndarray:
    """Stamp overlay curves onto a copy of the image."""
    out = np.array(img, copy=True)
    if out.shape[:2] != (window.height_px, window.width_px):
        raise ValueError("image shape does not match the window resolution")
    for overlay in overlays:
        points = _shape_points(window, overlay.shape)
        if points.size == 0:
            continue
        rows = np.rint((window.y_max - points.imag) / window.dy - 0.5).astype(np.int64)
        cols = np.rint((points.real - window.x_min) / window.dx - 0.5).astype(np.int64)
        color = np.asarray(overlay.color, dtype=np.uint8)
        for di, dj in _brush(overlay.stroke_px):
            rr = rows + di
            cc = cols + dj
            keep = (rr >= 0) & (rr < window.height_px) & (cc >= 0) & (cc < window.width_px)
            out[rr[keep], cc[keep]] = color
    return out


# ---------------------------------------------------------------------------
# Rotational-symmetry oracle


def image_rotation_residual(
    img: np.ndarray,
    angle: float,
    center: tuple[float, float] | None = None,
    channel_tol: int = 8,
) -> float:
    """Fraction of pixels that change under rotation about the center.

    The image is rotated by angle with nearest-neighbor sampling;
    destination pixels whose source falls outside the frame are skipped.
    A pixel counts as mismatched when any channel differs by more than
    channel_tol.  A perfectly n-fold symmetric image scores ~0 at 2pi/n.
    """
    arr = np.asarray(img)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError("expected an (H, W, 3) image")
    if arr.shape[0] != arr.shape[1]:
        raise ValueError("rotation residual wants a square image")
    height, width = arr.shape[:2]
    if center is None:
        center = ((height - 1) / 2.0, (width - 1) / 2.0)
    row_c, col_c = center

    rows, cols = np.mgrid[0:height, 0:width]
    dr = rows - row_c
    dc = cols - col_c
    cos_a = math.cos(angle)
    sin_a = math.sin(angle)
    src_r = np.rint(row_c + cos_a * dr - sin_a * dc).astype(np.int64)
    src_c = np.rint(col_c + sin_a * dr + cos_a * dc).astype(np.int64)
    valid = (src_r >= 0) & (src_r < height) & (src_c >= 0) & (src_c < width)

    moved = arr[src_r[valid], src_c[valid]].astype(np.int16)
    here = arr[rows[valid], cols[valid]].astype(np.int16)
    mismatch = np.any(np.abs(moved - here) > channel_tol, axis=-1)
    return float(np.count_nonzero(mismatch)) / float(np.count_nonzero(valid))
