"""The modular group acting on the upper half plane.

Elements are integer Mobius maps z -> (jz + k)/(mz + n) with
jn - mk = 1; a matrix and its negative are the same map, so instances
are stored with m > 0, or m == 0 and j > 0.  T: z -> z+1 and
I: z -> -1/z generate the whole group, and every element factors as
T^p I T^p' I ... I T^p0 by a division-algorithm argument that peels one
quotient per step.

The fundamental domain F = {|z| >= 1, |Re z| <= 1/2} tiles H under the
group.  reduce_to_fundamental_domain pulls any point into F by repeated
translate-then-invert steps and returns the group word it used.

Averaging a periodic seed function over group orbits produces functions
that are invariant under the full group.  The orbit is enumerated by two
ternary trees of coprime pairs (j, k), each node carrying Bezout
coefficients (u, v) with u*j + v*k = 1 that pin down the bottom matrix
row; each node contributes the pair of maps (jz+k)/(mz+n) and
(-jz+k)/(mz-n).  Sums are evaluated term by term in a fixed enumeration
order so results are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .exprs import Expr, Lattice, evaluate

MAX_TREE_DEPTH = 10
MAX_SUM_DEPTH = 6


@dataclass(frozen=True)
class MobiusInt:
    """Integer Mobius map z -> (jz + k)/(mz + n) with jn - mk = 1."""

    j: int
    k: int
    m: int
    n: int

    def __post_init__(self):
        for entry in (self.j, self.k, self.m, self.n):
            if not isinstance(entry, int):
                raise ValueError("matrix entries must be ints")
        if self.j * self.n - self.m * self.k != 1:
            raise ValueError(
                f"determinant must be 1, got {self.j * self.n - self.m * self.k}"
            )
        if self.m < 0 or (self.m == 0 and self.j < 0):
            object.__setattr__(self, "j", -self.j)
            object.__setattr__(self, "k", -self.k)
            object.__setattr__(self, "m", -self.m)
            object.__setattr__(self, "n", -self.n)

    @classmethod
    def identity(cls) -> "MobiusInt":
        return cls(1, 0, 0, 1)

    @classmethod
    def t_power(cls, p: int) -> "MobiusInt":
        """T^p: z -> z + p."""
        return cls(1, p, 0, 1)

    @classmethod
    def inversion(cls) -> "MobiusInt":
        """I: z -> -1/z."""
        return cls(0, -1, 1, 0)

    def apply(self, z):
        zz = np.asarray(z, dtype=np.complex128)
        with np.errstate(all="ignore"):
            result = (self.j * zz + self.k) / (self.m * zz + self.n)
        return complex(result[()]) if result.ndim == 0 else result

    def compose(self, other: "MobiusInt") -> "MobiusInt":
        """The map z -> self(other(z))."""
        return MobiusInt(
            self.j * other.j + self.k * other.m,
            self.j * other.k + self.k * other.n,
            self.m * other.j + self.n * other.m,
            self.m * other.k + self.n * other.n,
        )

    def inverse(self) -> "MobiusInt":
        return MobiusInt(self.n, -self.k, -self.m, self.j)


def element_order(m: MobiusInt, cap: int = 24) -> int | None:
    """Smallest q >= 1 with m^q the identity map, or None up to cap."""
    power = m
    for q in range(1, cap + 1):
        if power == MobiusInt.identity():
            return q
        power = power.compose(m)
    return None


def conjugate_center(m_fix: MobiusInt, z0: complex, conj: MobiusInt) -> tuple[complex, int]:
    """Transport a finite-order fixed point: conj . m_fix . conj^-1 fixes conj(z0).

    Returns (conj(z0), order of m_fix).  Conjugation preserves the order,
    so the returned point is a rotation center of the same kind.
    """
    order = element_order(m_fix)
    if order is None:
        raise ValueError("m_fix does not have finite order")
    moved = m_fix.apply(z0)
    if abs(moved - z0) > 1e-9:
        raise ValueError(f"z0 is not fixed by m_fix (moved by {abs(moved - z0):.3g})")
    return (conj.apply(z0), order)


# ---------------------------------------------------------------------------
# Coprime-pair trees


@dataclass(frozen=True)
class CoprimeNode:
    """Coprime pair (j, k) with Bezout coefficients u*j + v*k = 1."""

    j: int
    k: int
    bezout_u: int
    bezout_v: int

    def __post_init__(self):
        if self.j <= 0 or self.k <= 0:
            raise ValueError("tree pairs are positive")
        if math.gcd(self.j, self.k) != 1:
            raise ValueError(f"({self.j}, {self.k}) is not coprime")
        if self.bezout_u * self.j + self.bezout_v * self.k != 1:
            raise ValueError("Bezout identity fails")


def _node_children(node: CoprimeNode) -> tuple[CoprimeNode, CoprimeNode, CoprimeNode]:
    j, k, u, v = node.j, node.k, node.bezout_u, node.bezout_v
    return (
        CoprimeNode(2 * j - k, j, -v, u + 2 * v),
        CoprimeNode(2 * j + k, j, v, u - 2 * v),
        CoprimeNode(2 * k + j, k, u, v - 2 * u),
    )


def coprime_tree(root: tuple[int, int], depth: int) -> list[CoprimeNode]:
    """Breadth-first ternary tree of coprime pairs from root (2,1) or (3,1).

    Each node (j, k) branches to (2j-k, j), (2j+k, j), (2k+j, k), with
    Bezout coefficients updated so u*j + v*k = 1 keeps holding.  The two
    roots both carry (u, v) = (0, 1).
    """
    if tuple(root) not in ((2, 1), (3, 1)):
        raise ValueError(f"root must be (2, 1) or (3, 1), got {root!r}")
    if not isinstance(depth, int) or depth < 0:
        raise ValueError("depth must be a nonnegative int")
    if depth > MAX_TREE_DEPTH:
        raise ValueError(f"depth {depth} exceeds the cap of {MAX_TREE_DEPTH}")
    nodes = [CoprimeNode(root[0], root[1], 0, 1)]
    level = nodes[:]
    for _ in range(depth):
        next_level = []
        for node in level:
            next_level.extend(_node_children(node))
        nodes.extend(next_level)
        level = next_level
    return nodes


def gamma_elements(depth: int) -> list[MobiusInt]:
    """Fixed enumeration of group elements used by the symmetrizing sum.

    Order: the identity map and z -> -1/z, then breadth-first over the
    (2,1) tree, then the (3,1) tree; each node (j, k) with Bezout (u, v)
    yields (jz+k)/(-vz+u) followed by (-jz+k)/(-vz-u).  Node count grows
    as 3^depth per tree, giving 2 + 4*(3^(depth+1) - 1)/2 elements.
    """
    if not isinstance(depth, int) or depth < 0:
        raise ValueError("depth must be a nonnegative int")
    if depth > MAX_SUM_DEPTH:
        raise ValueError(f"depth {depth} exceeds the cap of {MAX_SUM_DEPTH}")
    elements = [MobiusInt.identity(), MobiusInt.inversion()]
    for root in ((2, 1), (3, 1)):
        for node in coprime_tree(root, depth):
            j, k, u, v = node.j, node.k, node.bezout_u, node.bezout_v
            elements.append(MobiusInt(j, k, -v, u))
            elements.append(MobiusInt(-j, k, -v, -u))
    return elements


# ---------------------------------------------------------------------------
# Group words over the generators T and I


@dataclass(frozen=True)
class GammaWord:
    """Alternating word T^pL I ... I T^p1 I T^p0 (rightmost applied first).

    The empty word is the identity."""

    powers: tuple[int, ...]

    def __post_init__(self):
        if not all(isinstance(p, int) for p in self.powers):
            raise ValueError("powers must be ints")

    def to_mobius(self) -> MobiusInt:
        if not self.powers:
            return MobiusInt.identity()
        result = MobiusInt.t_power(self.powers[0])
        for p in self.powers[1:]:
            result = MobiusInt.t_power(p).compose(MobiusInt.inversion()).compose(result)
        return result

    def apply(self, z: complex) -> complex:
        w = complex(z)
        if not self.powers:
            return w
        w += self.powers[0]
        for p in self.powers[1:]:
            w = -1.0 / w
            w += p
        return w

    def inverse(self) -> "GammaWord":
        return GammaWord(tuple(-p for p in reversed(self.powers)))


def reduce_to_fundamental_domain(
    z: complex, tol: float = 1e-12, max_iter: int = 10000
) -> tuple[complex, GammaWord]:
    """Pull z into F = {|w| >= 1, |Re w| <= 1/2} and report the word used.

    Alternates recentering Re into [-1/2, 1/2] with inversion while
    |w| < 1; each inversion raises Im, so the loop terminates.  Boundary
    points (within tol) are normalized to the representative with
    Re <= 0.  Returns (w, word) with word.apply(z) == w.
    """
    w = complex(z)
    if not (w.imag > 0):
        raise ValueError("point must lie in the upper half plane")
    powers: list[int] = []
    for _ in range(max_iter):
        q = -round(w.real)
        w += q
        powers.append(q)
        if abs(w) >= 1.0 - tol:
            break
        w = -1.0 / w
    else:
        raise RuntimeError(f"no convergence after {max_iter} iterations")

    # Tie-breaks: prefer Re <= 0 on the boundary of F.
    if abs(abs(w) - 1.0) <= tol and w.real > tol:
        w = -1.0 / w
        powers.append(0)
    if abs(w.real - 0.5) <= tol:
        w -= 1.0
        powers[-1] -= 1
    if powers == [0]:
        # nothing was applied: the point was already in F
        powers = []
    return w, GammaWord(tuple(powers))


def in_fundamental_domain(z: complex, tol: float = 1e-12) -> bool:
    return z.imag > 0 and abs(z) >= 1.0 - tol and abs(z.real) <= 0.5 + tol


def _nearest_quotient(j: int, m: int) -> int:
    q, r = divmod(j, m)
    if 2 * abs(r) > abs(m):
        q += 1
    return q


def gamma_word_decompose(m: MobiusInt) -> GammaWord:
    """Express a group element as an alternating word in T and I.

    Peels nearest-integer quotients: while the bottom-left entry is
    nonzero, multiply by I T^-q on the left, which strictly shrinks it.
    The result recomposes to the input exactly (as a map)."""
    g = m
    quotients: list[int] = []
    while g.m != 0:
        q = _nearest_quotient(g.j, g.m)
        g = MobiusInt.inversion().compose(MobiusInt.t_power(-q)).compose(g)
        quotients.append(q)
    # Now g is upper triangular and canonical, hence exactly T^k.
    powers = (g.k, *reversed(quotients))
    return GammaWord(powers)


# ---------------------------------------------------------------------------
# Symmetrizing sums


def sum_over_elements(ast: Expr, elements: Sequence[MobiusInt], z, lattice: Lattice = Lattice.SQUARE):
    """Sum f(g(z)) over the given maps, term by term in list order."""
    scalar = np.ndim(z) == 0 and not isinstance(z, np.ndarray)
    zz = np.asarray(z, dtype=np.complex128)
    total = np.zeros(zz.shape, dtype=np.complex128)
    with np.errstate(all="ignore"):
        for el in elements:
            moved = (el.j * zz + el.k) / (el.m * zz + el.n)
            total = total + evaluate(ast, moved, lattice)
    return complex(total[()]) if scalar else total


def symmetrize(ast: Expr, depth: int, lattice: Lattice = Lattice.SQUARE) -> Callable:
    """Average a seed function over the group enumeration at this depth.

    The seed should have period 1 in x = Re z (a sum of E(m,0) waves or
    similar); the returned callable is then approximately invariant under
    the whole group, converging as depth grows.  Term count is
    2 + 4*(3^(depth+1) - 1)/2, i.e. 6, 18, 54, 162, 486 for depths 0-4.
    """
    elements = gamma_elements(depth)

    def symmetrized(z):
        return sum_over_elements(ast, elements, z, lattice)

    symmetrized.term_count = len(elements)
    return symmetrized
