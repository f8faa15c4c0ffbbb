"""Builders for plane-symmetric functions.

A rosette with p-fold symmetry is a finite sum a * z^m * conj(z)^n where
every exponent pair satisfies m == n (mod p); adding the swapped pair
(a, n, m) makes the design mirror symmetric across the real axis.

Wallpaper functions are sums of rotation-averaged lattice waves W(m,n)
over the square lattice (2- and 4-fold) or the rhombic lattice (3- and
6-fold).  Pairing rules add the partner wave that buys an extra
symmetry: ReflectX appends the index pair whose wave equals W(m,n) at
conj(z), PointPair appends W(-m,-n) so the sum is even.  6-fold designs
are 3-fold averages with PointPair forced on every term.

check_symmetry measures how far an expression is from being invariant
under a plane transform by sampling an annulus around the origin: far
enough out to catch every symmetry class, clear of the origin so poles
from negative powers do not amplify floating-point noise into the
residual.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np

from .exprs import (
    Add,
    Conj,
    Const,
    Expr,
    GroupAvg,
    IntPow,
    Lattice,
    Mul,
    Var,
    evaluate,
)

OMEGA = cmath.exp(2j * cmath.pi / 3)


def lattice_wrap(z, width: float, height: float):
    """Reduce Re into [0, width) and Im into [0, height); elementwise."""
    if not (width > 0 and height > 0):
        raise ValueError("wrap periods must be positive")
    z = np.asarray(z, dtype=np.complex128)
    wrapped = np.mod(z.real, width) + 1j * np.mod(z.imag, height)
    return complex(wrapped[()]) if wrapped.ndim == 0 else wrapped


# ---------------------------------------------------------------------------
# Rosettes


@dataclass(frozen=True)
class RosetteTerm:
    """One monomial a * z^m * conj(z)^n; spin marks animation phase."""

    a: complex
    m: int
    n: int
    spin: int = 0


def _monomial(a: complex, m: int, n: int) -> Expr:
    factors: list[Expr] = []
    if m != 0:
        factors.append(Var() if m == 1 else IntPow(Var(), m))
    if n != 0:
        factors.append(Conj(Var()) if n == 1 else IntPow(Conj(Var()), n))
    if a == 1 and factors:
        node = factors[0]
        factors = factors[1:]
    else:
        node = Const(a)
    for factor in factors:
        node = Mul(node, factor)
    return node


def _sum(parts: Sequence[Expr]) -> Expr:
    node = parts[0]
    for part in parts[1:]:
        node = Add(node, part)
    return node


def build_rosette(p: int, terms: Sequence[RosetteTerm], mirror_x: bool = False) -> Expr:
    """Sum of monomials with p-fold rotational symmetry about the origin.

    Every term must satisfy m == n (mod p).  With mirror_x each term is
    paired with its (n, m) partner, which forces f(conj(z)) == f(z).
    """
    if not isinstance(p, int) or p < 1:
        raise ValueError(f"rotation order p must be a positive int, got {p!r}")
    if not terms:
        raise ValueError("need at least one term")
    parts: list[Expr] = []
    for term in terms:
        if (term.m - term.n) % p != 0:
            raise ValueError(
                f"term (m={term.m}, n={term.n}) breaks {p}-fold symmetry: "
                f"m - n = {term.m - term.n} is not a multiple of {p}"
            )
        parts.append(_monomial(term.a, term.m, term.n))
        if mirror_x and term.m != term.n:
            parts.append(_monomial(term.a, term.n, term.m))
    return _sum(parts)


# ---------------------------------------------------------------------------
# Wallpaper functions


class Pairing(Enum):
    NONE = "none"
    REFLECT_X = "reflect_x"
    POINT_PAIR = "point_pair"


@dataclass(frozen=True)
class WallpaperTerm:
    a: complex
    m: int
    n: int
    pairing: Pairing = Pairing.NONE
    spin: int = 0


@dataclass(frozen=True)
class WallpaperProduct:
    """a times a product of averaged waves, e.g. 2 * W(2,3) * W(1,4)."""

    a: complex
    factors: tuple[tuple[int, int], ...]
    spin: int = 0


_ORDER_LATTICE = {
    2: Lattice.SQUARE,
    3: Lattice.RHOMBIC,
    4: Lattice.SQUARE,
    6: Lattice.RHOMBIC,
}

# Index pair whose wave matches W(m,n) evaluated at conj(z).
_REFLECT_PARTNER = {
    3: lambda m, n: (n, m),
    4: lambda m, n: (-n, -m),
    6: lambda m, n: (n, m),
}


def lattice_for_order(order: int) -> Lattice:
    """Square lattice for 2- and 4-fold designs, rhombic for 3- and 6-fold."""
    try:
        return _ORDER_LATTICE[order]
    except KeyError:
        raise ValueError(f"wallpaper rotation order must be 2, 3, 4 or 6, got {order!r}") from None


def _term_indices(order: int, term: WallpaperTerm) -> list[tuple[int, int]]:
    pairs = [(term.m, term.n)]
    if order == 6 or term.pairing is Pairing.POINT_PAIR:
        pairs.append((-term.m, -term.n))
    if term.pairing is Pairing.REFLECT_X:
        if order not in _REFLECT_PARTNER:
            raise ValueError(f"reflect pairing is not defined for order {order}")
        partner = _REFLECT_PARTNER[order](term.m, term.n)
        pairs.append(partner)
        if order == 6:
            pairs.append((-partner[0], -partner[1]))
    seen: list[tuple[int, int]] = []
    for pair in pairs:
        if pair not in seen:
            seen.append(pair)
    return seen


def build_wallpaper(
    order: int,
    terms: Sequence[WallpaperTerm] = (),
    products: Sequence[WallpaperProduct] = (),
) -> Expr:
    """Sum of averaged lattice waves with the given rotational symmetry.

    Evaluate the result with lattice_for_order(order).  Orders 2 and 4
    average over the square lattice, 3 and 6 over the rhombic one; order
    6 forces the point pairing (m,n) + (-m,-n) on every term and every
    product so the design survives z -> -z.
    """
    avg_order = {2: 2, 3: 3, 4: 4, 6: 3}[order] if order in (2, 3, 4, 6) else None
    if avg_order is None:
        raise ValueError(f"wallpaper rotation order must be 2, 3, 4 or 6, got {order!r}")
    if not terms and not products:
        raise ValueError("need at least one term or product")

    parts: list[Expr] = []
    for term in terms:
        waves = [GroupAvg(avg_order, m, n) for m, n in _term_indices(order, term)]
        parts.append(Mul(Const(term.a), _sum(waves)))
    for product in products:
        if not product.factors:
            raise ValueError("product needs at least one factor")
        groups = [product.factors]
        if order == 6:
            negated = tuple((-m, -n) for m, n in product.factors)
            if negated != product.factors:
                groups.append(negated)
        product_parts = []
        for group in groups:
            node: Expr = GroupAvg(avg_order, group[0][0], group[0][1])
            for m, n in group[1:]:
                node = Mul(node, GroupAvg(avg_order, m, n))
            product_parts.append(node)
        parts.append(Mul(Const(product.a), _sum(product_parts)))
    return _sum(parts)


# ---------------------------------------------------------------------------
# Showcase designs (used by tests, the verify suites and the shipped specs)

SIXFOLD_ROSETTE_P = 6
SIXFOLD_ROSETTE_TERMS = (
    RosetteTerm(1 + 1j, 0, 0),
    RosetteTerm(0.25j, 6, 0, spin=1),
    RosetteTerm(1, -6, 0, spin=-1),
)

FIVEFOLD_ROSETTE_P = 5
FIVEFOLD_ROSETTE_TERMS = (
    RosetteTerm(2 + 3j, 5, 0),
    RosetteTerm(1j, 6, 1),
    RosetteTerm(0.0005j, 4, -6),
)

FOURFOLD_WALLPAPER_TERMS = (
    WallpaperTerm(1, 1, 0, Pairing.REFLECT_X),
    WallpaperTerm(0.5, 1, 5, Pairing.REFLECT_X),
    WallpaperTerm(0.1j, -2, 4, Pairing.REFLECT_X),
    WallpaperTerm(-0.05j, -6, 3, Pairing.REFLECT_X),
)

TWOFOLD_WALLPAPER_TERMS = (
    WallpaperTerm(1, 1, 0),
    WallpaperTerm(1, 0, -1),
    WallpaperTerm(0.5, 1, 5),
    WallpaperTerm(0.1j, -2, 4),
    WallpaperTerm(-0.05j, -6, 3),
)

THREEFOLD_PRODUCT_TERMS = (WallpaperTerm(1, 1, 0),)
THREEFOLD_PRODUCTS = (WallpaperProduct(2, ((2, 3), (1, 4))),)

SIXFOLD_WALLPAPER_TERMS = (
    WallpaperTerm(1, 2, 3, Pairing.REFLECT_X),
    WallpaperTerm(0.5j, 1, 5, Pairing.REFLECT_X),
    WallpaperTerm(0.25, 3, 4, Pairing.REFLECT_X),
)


def demo_functions() -> dict[str, tuple[Expr, Lattice]]:
    """The five stock designs, each with its evaluation lattice."""
    return {
        "sixfold-rosette": (
            build_rosette(SIXFOLD_ROSETTE_P, SIXFOLD_ROSETTE_TERMS),
            Lattice.SQUARE,
        ),
        "fivefold-mirror-rosette": (
            build_rosette(FIVEFOLD_ROSETTE_P, FIVEFOLD_ROSETTE_TERMS, mirror_x=True),
            Lattice.SQUARE,
        ),
        "fourfold-wallpaper": (
            build_wallpaper(4, FOURFOLD_WALLPAPER_TERMS),
            Lattice.SQUARE,
        ),
        "threefold-product-wallpaper": (
            build_wallpaper(3, THREEFOLD_PRODUCT_TERMS, THREEFOLD_PRODUCTS),
            Lattice.RHOMBIC,
        ),
        "sixfold-wallpaper": (
            build_wallpaper(6, SIXFOLD_WALLPAPER_TERMS),
            Lattice.RHOMBIC,
        ),
    }


# ---------------------------------------------------------------------------
# Symmetry checking

Transform = Callable[[np.ndarray], np.ndarray]


def rotation(theta: float) -> Transform:
    rot = cmath.exp(1j * theta)
    return lambda z: rot * z


def rotation_about(theta: float, center: complex) -> Transform:
    rot = cmath.exp(1j * theta)
    return lambda z: rot * (z - center) + center


def translation(c: complex) -> Transform:
    return lambda z: z + c


def conjugation() -> Transform:
    return np.conj


def negation() -> Transform:
    return lambda z: -z


def sample_points(samples: int, seed: int = 0) -> np.ndarray:
    """Deterministic test points in the annulus 0.4 <= |z| <= 1.2."""
    rng = np.random.default_rng(seed)
    radius = rng.uniform(0.4, 1.2, samples)
    angle = rng.uniform(0.0, 2.0 * math.pi, samples)
    return radius * np.exp(1j * angle)


def check_symmetry(
    ast: Expr,
    transform: Transform,
    samples: int = 1024,
    lattice: Lattice = Lattice.SQUARE,
    seed: int = 0,
) -> float:
    """Max |f(S z) - f(z)| over seeded sample points (non-finite skipped)."""
    z = sample_points(samples, seed)
    f_moved = evaluate(ast, np.asarray(transform(z), dtype=np.complex128), lattice)
    f_here = evaluate(ast, z, lattice)
    good = np.isfinite(f_moved) & np.isfinite(f_here)
    if not np.any(good):
        return 0.0
    return float(np.max(np.abs(f_moved[good] - f_here[good])))


def is_crystallographic(n: int) -> bool:
    """True when a lattice can have an n-fold rotation: 2cos(2pi/n) integral."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"rotation order must be a positive int, got {n!r}")
    trace = 2.0 * math.cos(2.0 * math.pi / n)
    return abs(trace - round(trace)) <= 1e-12
