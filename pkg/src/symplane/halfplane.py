"""Geometry of the hyperbolic upper half plane H = {z : Im z > 0}.

The metric is ds = sqrt(dx^2 + dy^2) / y, so lengths blow up near the
real axis and the area element is dx dy / y^2.  Orientation-preserving
isometries are the real Mobius maps z -> (az + b)/(cz + d) with
ad - bc > 0; scaling the matrix leaves the map unchanged, so every map
is stored normalized to determinant 1 with a canonical sign choice.

Geodesics are vertical rays and semicircles centered on the real axis.
Horocycles tangent to the real axis at u are Euclidean circles through u
with center (u, r).  A hyperbolic circle of radius rho about x + iy is
the Euclidean circle centered at x + iy*cosh(rho) with radius
y*sinh(rho): conjugating by the isometry that moves the center onto the
imaginary axis shows the Euclidean picture of the hyperbolic disk is a
round circle displaced upward.

The Cayley map (iz + 1)/(z + i) carries H onto the unit disk, for
drawing designs in the disk model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

GEODESIC_TOL = 1e-9


def _in_upper_half(z: complex) -> bool:
    return np.imag(z) > 0


@dataclass(frozen=True)
class MobiusReal:
    """Real Mobius map z -> (az+b)/(cz+d), stored with ad - bc = 1.

    Construction rejects non-positive determinants.  Since (a,b,c,d) and
    (-a,-b,-c,-d) are the same map, the sign is fixed by c > 0, or c == 0
    and a > 0.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        a, b, c, d = (float(self.a), float(self.b), float(self.c), float(self.d))
        det = a * d - b * c
        if not (det > 0):
            raise ValueError(f"determinant must be positive, got {det}")
        scale = 1.0 / math.sqrt(det)
        a, b, c, d = a * scale, b * scale, c * scale, d * scale
        if c < 0 or (c == 0 and a < 0):
            a, b, c, d = -a, -b, -c, -d
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls) -> "MobiusReal":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def translation(cls, u: float) -> "MobiusReal":
        return cls(1.0, float(u), 0.0, 1.0)

    @classmethod
    def scaling(cls, rho: float) -> "MobiusReal":
        if not (rho > 0):
            raise ValueError("scaling factor must be positive")
        return cls(float(rho), 0.0, 0.0, 1.0)

    @classmethod
    def inversion(cls) -> "MobiusReal":
        """z -> -1/z."""
        return cls(0.0, -1.0, 1.0, 0.0)

    def apply(self, z):
        return mobius_apply(self, z)

    def close_to(self, other: "MobiusReal", tol: float = 1e-12) -> bool:
        return (
            abs(self.a - other.a) <= tol
            and abs(self.b - other.b) <= tol
            and abs(self.c - other.c) <= tol
            and abs(self.d - other.d) <= tol
        )


def mobius_apply(m: MobiusReal, z):
    """Apply the map elementwise; accepts scalars or complex arrays."""
    zz = np.asarray(z, dtype=np.complex128)
    with np.errstate(all="ignore"):
        result = (m.a * zz + m.b) / (m.c * zz + m.d)
    return complex(result[()]) if result.ndim == 0 else result


def mobius_compose(first: MobiusReal, second: MobiusReal) -> MobiusReal:
    """The map z -> first(second(z)); composition is matrix product."""
    return MobiusReal(
        first.a * second.a + first.b * second.c,
        first.a * second.b + first.b * second.d,
        first.c * second.a + first.d * second.c,
        first.c * second.b + first.d * second.d,
    )


def mobius_inverse(m: MobiusReal) -> MobiusReal:
    return MobiusReal(m.d, -m.b, -m.c, m.a)


# ---------------------------------------------------------------------------
# Factorization into elementary isometries


@dataclass(frozen=True)
class Translate:
    u: float


@dataclass(frozen=True)
class Scale:
    rho: float


@dataclass(frozen=True)
class Invert:
    """z -> -1/z."""


WordStep = Union[Translate, Scale, Invert]


def special_word(m: MobiusReal) -> list[WordStep]:
    """Factor a normalized map into translations, scalings and -1/z.

    The word reads outermost first: the map equals steps[0] applied to
    steps[1] applied to ... applied to steps[-1](z).  Maps with c != 0
    factor as translate(a/c) . scale(1/c^2) . invert . translate(d/c);
    upper-triangular maps as scale(a^2) . translate(b/a).
    """
    if m.c != 0:
        return [Translate(m.a / m.c), Scale(1.0 / (m.c * m.c)), Invert(), Translate(m.d / m.c)]
    return [Scale(m.a * m.a), Translate(m.b / m.a)]


def _step_map(step: WordStep) -> MobiusReal:
    if isinstance(step, Translate):
        return MobiusReal.translation(step.u)
    if isinstance(step, Scale):
        return MobiusReal.scaling(step.rho)
    if isinstance(step, Invert):
        return MobiusReal.inversion()
    raise TypeError(f"not a word step: {step!r}")


def compose_word(word: Sequence[WordStep]) -> MobiusReal:
    result = MobiusReal.identity()
    for step in word:
        result = mobius_compose(result, _step_map(step))
    return result


def apply_word(word: Sequence[WordStep], z):
    for step in reversed(word):
        if isinstance(step, Translate):
            z = z + step.u
        elif isinstance(step, Scale):
            z = step.rho * z
        else:
            z = -1.0 / z
    return z


# ---------------------------------------------------------------------------
# Metric quantities


def hyperbolic_distance(z: complex, w: complex) -> float:
    """Geodesic distance between two points of H.

    Uses d(z, w) = ln((|z - conj w| + |z - w|) / (|z - conj w| - |z - w|)),
    which needs no case split between vertical and circular geodesics.
    """
    if not (_in_upper_half(z) and _in_upper_half(w)):
        raise ValueError("points must lie in the upper half plane")
    z = complex(z)
    w = complex(w)
    cross = abs(z - w.conjugate())
    chord = abs(z - w)
    return math.log((cross + chord) / (cross - chord))


def curve_length(points: Sequence[complex]) -> float:
    """Hyperbolic length of a polyline.

    Each segment contributes its Euclidean length divided by the
    geometric mean of the endpoint heights, a midpoint-style rule that
    converges quadratically under refinement.  Fewer than two points
    have length zero.
    """
    pts = np.asarray(points, dtype=np.complex128)
    if pts.size < 2:
        return 0.0
    if not np.all(pts.imag > 0):
        raise ValueError("polyline must stay in the upper half plane")
    steps = np.abs(np.diff(pts))
    means = np.sqrt(pts.imag[:-1] * pts.imag[1:])
    return float(np.sum(steps / means))


def rect_area(x0: float, x1: float, y0: float, y1: float) -> float:
    """Hyperbolic area of the Euclidean rectangle [x0,x1] x [y0,y1].

    Integrating dx dy / y^2 gives (x1 - x0) * (1/y0 - 1/y1).  Degenerate
    rectangles have zero area.
    """
    if x1 < x0:
        raise ValueError("need x1 >= x0")
    if not (y0 > 0) or y1 < y0:
        raise ValueError("need y1 >= y0 > 0")
    return (x1 - x0) * (1.0 / y0 - 1.0 / y1)


# ---------------------------------------------------------------------------
# Curves


@dataclass(frozen=True, eq=False)
class Ray:
    """Vertical geodesic {u + it : t > 0}."""

    u: float

    def __eq__(self, other):
        return isinstance(other, Ray) and abs(self.u - other.u) <= GEODESIC_TOL

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Semicircle:
    """Geodesic semicircle of radius r centered at u on the real axis."""

    r: float
    u: float

    def __post_init__(self):
        if not (self.r > 0):
            raise ValueError("semicircle radius must be positive")

    def __eq__(self, other):
        return (
            isinstance(other, Semicircle)
            and abs(self.r - other.r) <= GEODESIC_TOL
            and abs(self.u - other.u) <= GEODESIC_TOL
        )

    __hash__ = None


Geodesic = Union[Ray, Semicircle]


@dataclass(frozen=True)
class Horocycle:
    """Euclidean circle of radius r tangent to the real axis at u."""

    r: float
    u: float

    def __post_init__(self):
        if not (self.r > 0):
            raise ValueError("horocycle radius must be positive")

    @property
    def center(self) -> complex:
        return complex(self.u, self.r)


@dataclass(frozen=True)
class EuclideanCircle:
    center: complex
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        object.__setattr__(self, "center", complex(self.center))


def geodesic_through(z1: complex, z2: complex) -> Geodesic:
    """The unique geodesic through two distinct points of H."""
    if not (_in_upper_half(z1) and _in_upper_half(z2)):
        raise ValueError("points must lie in the upper half plane")
    z1 = complex(z1)
    z2 = complex(z2)
    if z1 == z2:
        raise ValueError("need two distinct points")
    if z1.real == z2.real:
        return Ray(z1.real)
    u = (abs(z2) ** 2 - abs(z1) ** 2) / (2.0 * (z2.real - z1.real))
    return Semicircle(abs(z1 - u), u)


def hyperbolic_circle(center: complex, rho: float) -> EuclideanCircle:
    """Euclidean picture of {z : d(z, center) = rho}."""
    center = complex(center)
    if not _in_upper_half(center):
        raise ValueError("center must lie in the upper half plane")
    if rho < 0:
        raise ValueError("radius must be nonnegative")
    y = center.imag
    return EuclideanCircle(complex(center.real, y * math.cosh(rho)), y * math.sinh(rho))


# ---------------------------------------------------------------------------
# Disk model


def cayley_to_disk(z):
    """H -> unit disk, z -> (iz + 1)/(z + i); i goes to 0."""
    zz = np.asarray(z, dtype=np.complex128)
    with np.errstate(all="ignore"):
        result = (1j * zz + 1.0) / (zz + 1j)
    return complex(result[()]) if result.ndim == 0 else result


def cayley_from_disk(w):
    """Inverse Cayley map, w -> (w + i)/(iw + 1)."""
    ww = np.asarray(w, dtype=np.complex128)
    with np.errstate(all="ignore"):
        result = (ww + 1j) / (1j * ww + 1.0)
    return complex(result[()]) if result.ndim == 0 else result
