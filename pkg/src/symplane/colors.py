"""Color lookup for domain coloring.

A complex value w picks a pixel out of a color-map image: the map covers
the square window [-scale, scale] x [-scale, scale] of the w-plane, the
real part selects the row and the imaginary part selects the column, and
the nearest pixel wins.  Row index grows with Re(w), i.e. downward in the
stored image; this orientation is deliberate and the renderer documents
it rather than hiding it.

Values that land outside the image are resolved by an out-of-range
policy: paint them black, clamp them to the border, or wrap them
periodically back into the window first.  Non-finite values are always
painted black no matter the policy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pngio import read_png

RgbColor = tuple[int, int, int]

BLACK: RgbColor = (0, 0, 0)


def round_half_away(x):
    """Round to nearest integer, halves away from zero.

    Unlike the builtin banker's rounding this does not depend on the
    parity of the neighbour, so index arithmetic is reproducible across
    platforms.  Works elementwise on arrays.
    """
    x = np.asarray(x)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


@dataclass(frozen=True)
class OutOfRange:
    """What to do with w outside the color-map window.

    kind is one of "black", "clamp", "wrap".  Wrap carries the two
    periods (real axis, imaginary axis) used to fold w back into the
    window before sampling.
    """

    kind: str
    period_u: float = 0.0
    period_v: float = 0.0

    def __post_init__(self):
        if self.kind not in ("black", "clamp", "wrap"):
            raise ValueError(f"unknown out-of-range policy {self.kind!r}")
        if self.kind == "wrap" and not (self.period_u > 0 and self.period_v > 0):
            raise ValueError("wrap policy needs positive periods")

    @classmethod
    def black(cls) -> "OutOfRange":
        return cls("black")

    @classmethod
    def clamp(cls) -> "OutOfRange":
        return cls("clamp")

    @classmethod
    def wrap(cls, period_u: float, period_v: float) -> "OutOfRange":
        return cls("wrap", float(period_u), float(period_v))


@dataclass(frozen=True)
class ColorMap:
    """A color-map image plus the affine rule that turns w into indices.

    The image spans [-scale_factor, scale_factor] along both axes of the
    w-plane.  With R rows and C columns the steps per unit are
    xinc = 2*scale_factor/R (rows, real axis) and yinc = 2*scale_factor/C
    (columns, imaginary axis); the window center sits at pixel
    (R // 2, C // 2).
    """

    pixels: np.ndarray = field(repr=False)
    scale_factor: float = 10.0

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 3 or arr.shape[2] != 3 or arr.dtype != np.uint8:
            raise ValueError("color map wants an (H, W, 3) uint8 array")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("color map image is empty")
        if not (self.scale_factor > 0):
            raise ValueError("scale_factor must be positive")
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_file(cls, path: str, scale_factor: float = 10.0) -> "ColorMap":
        return cls(read_png(path), scale_factor)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def center_row(self) -> int:
        return self.height // 2

    @property
    def center_col(self) -> int:
        return self.width // 2

    @property
    def xinc(self) -> float:
        return 2.0 * self.scale_factor / self.height

    @property
    def yinc(self) -> float:
        return 2.0 * self.scale_factor / self.width


def sample_colormap_array(w: np.ndarray, cmap: ColorMap, policy: OutOfRange) -> np.ndarray:
    """Vectorized lookup: complex array in, (..., 3) uint8 colors out."""
    w = np.asarray(w, dtype=np.complex128)
    u = np.real(w).astype(np.float64)
    v = np.imag(w).astype(np.float64)
    finite = np.isfinite(u) & np.isfinite(v)
    # Arbitrary in-window stand-in for bad values; masked to black below.
    u = np.where(finite, u, 0.0)
    v = np.where(finite, v, 0.0)

    if policy.kind == "wrap":
        # Fold into the window [-s, s) covered by the map.  The shift by s
        # keeps the chosen representative inside the image for periods up
        # to the full window extent.
        s = cmap.scale_factor
        u = np.mod(u + s, policy.period_u) - s
        v = np.mod(v + s, policy.period_v) - s

    p = cmap.center_row + round_half_away(u / cmap.xinc)
    q = cmap.center_col + round_half_away(v / cmap.yinc)

    if policy.kind == "clamp":
        p = np.clip(p, 0, cmap.height - 1)
        q = np.clip(q, 0, cmap.width - 1)

    in_range = (p >= 0) & (p < cmap.height) & (q >= 0) & (q < cmap.width) & finite
    p_idx = np.where(in_range, p, 0).astype(np.int64)
    q_idx = np.where(in_range, q, 0).astype(np.int64)
    colors = cmap.pixels[p_idx, q_idx]
    colors = np.where(in_range[..., None], colors, np.uint8(0))
    return colors.astype(np.uint8)


def sample_colormap(w: complex, cmap: ColorMap, policy: OutOfRange) -> RgbColor:
    """Scalar lookup; shares the exact index math with the array path."""
    color = sample_colormap_array(np.asarray([complex(w)]), cmap, policy)[0]
    return (int(color[0]), int(color[1]), int(color[2]))
