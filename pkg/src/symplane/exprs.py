"""Expression language for plane-symmetric functions of one complex variable.

Grammar (whitespace insensitive)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := atom ('^' ['-'] INT)?        # literal integer exponent only
    atom     := NUMBER | NUMBER 'i' | 'i' | 'z'
              | name '(' expr ')'            # conj, exp, log, sin, cos
              | wave '(' ['-'] INT ',' ['-'] INT ')'   # E, W2, W3, W4
              | '(' expr ')'

'^' binds tighter than unary minus, so -z^2 means -(z^2).  There are no
complex literals: 2i is shorthand for the imaginary number 2*i, and
values like 1+2i are formed by ordinary arithmetic.  Arithmetic between
plain literals is folded at parse time, so "(1+2i)" comes back as a
single constant.

E(m,n) is the lattice wave exp(2*pi*i*(m*u + n*v)) where (u, v) are the
coordinates of z in the active lattice basis: (1, i) for the square
lattice, (1, omega) with omega = exp(2*pi*i/3) for the rhombic one.
W2/W3/W4 average E over the 2-, 3- or 4-fold rotation orbit of z, which
is what makes wallpaper functions rotation invariant.

Evaluation is numpy-vectorized: pass a complex scalar or any complex
array for z.  Overflow and division by zero propagate as inf/nan values
rather than raising, and the renderer paints such pixels with the
out-of-range policy.
"""

from __future__ import annotations

import math
import re as _re
from dataclasses import dataclass
from enum import Enum

import numpy as np

MAX_EXPONENT = 64

# Primitive cube root of unity; the rhombic lattice basis is (1, OMEGA).
OMEGA = complex(-0.5, math.sqrt(3.0) / 2.0)
_OMEGA2 = OMEGA.conjugate()


class Lattice(Enum):
    SQUARE = "square"
    RHOMBIC = "rhombic"


class ExprError(ValueError):
    """Parse failure; .position is the 0-based offset in the source text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (offset {position})")
        self.position = position


# ---------------------------------------------------------------------------
# AST


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Const(Expr):
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class Var(Expr):
    """The free variable z."""


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Conj(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class IntPow(Expr):
    base: Expr
    power: int

    def __post_init__(self):
        if not isinstance(self.power, int):
            raise ValueError("IntPow power must be an int")
        if abs(self.power) > MAX_EXPONENT:
            raise ValueError(f"|exponent| must be <= {MAX_EXPONENT}, got {self.power}")


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr


@dataclass(frozen=True)
class Log(Expr):
    arg: Expr


@dataclass(frozen=True)
class Sin(Expr):
    arg: Expr


@dataclass(frozen=True)
class Cos(Expr):
    arg: Expr


@dataclass(frozen=True)
class LatticeExp(Expr):
    """The plane wave E(m,n) in the active lattice basis."""

    m: int
    n: int

    def __post_init__(self):
        if not isinstance(self.m, int) or not isinstance(self.n, int):
            raise ValueError("lattice wave indices must be ints")


@dataclass(frozen=True)
class GroupAvg(Expr):
    """E(m,n) averaged over a rotation orbit: order 2, 3 or 4."""

    order: int
    m: int
    n: int

    def __post_init__(self):
        if self.order not in (2, 3, 4):
            raise ValueError(f"rotation order must be 2, 3 or 4, got {self.order}")
        if not isinstance(self.m, int) or not isinstance(self.n, int):
            raise ValueError("lattice wave indices must be ints")


_UNARY_FUNCS = {"conj": Conj, "exp": Exp, "log": Log, "sin": Sin, "cos": Cos}
_WAVE_FUNCS = {"E": None, "W2": 2, "W3": 3, "W4": 4}


# ---------------------------------------------------------------------------
# Lexer

_TOKEN_RE = _re.compile(
    r"""
    (?P<num>(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?i?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
  | (?P<ws>\s+)
""",
    _re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # num | imag | name | op | end
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        if match.lastgroup == "num":
            body = match.group("num")
            if body.endswith("i"):
                tokens.append(_Token("imag", body[:-1], pos))
            else:
                tokens.append(_Token("num", body, pos))
        elif match.lastgroup == "name":
            tokens.append(_Token("name", match.group("name"), pos))
        elif match.lastgroup == "op":
            tokens.append(_Token("op", match.group("op"), pos))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect_op(self, op: str) -> _Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise ExprError(f"expected {op!r}", tok.pos)
        return self.advance()

    def parse(self) -> Expr:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprError(f"unexpected {tok.text!r}", tok.pos)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            rhs = self.term()
            node = self._binary(Add if op == "+" else Sub, node, rhs)
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            rhs = self.unary()
            node = self._binary(Mul if op == "*" else Div, node, rhs)
        return node

    @staticmethod
    def _binary(cls, left: Expr, right: Expr) -> Expr:
        # Fold arithmetic between plain literals so constants stay single
        # nodes; everything else is kept structurally.
        if isinstance(left, Const) and isinstance(right, Const):
            a, b = left.value, right.value
            if cls is Add:
                return Const(a + b)
            if cls is Sub:
                return Const(a - b)
            if cls is Mul:
                return Const(a * b)
            return Const(a / b) if b != 0 else cls(left, right)
        return cls(left, right)

    def unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        node = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            where = self.peek().pos
            try:
                node = IntPow(node, self.int_literal("exponent"))
            except ValueError as exc:
                raise ExprError(str(exc), where) from None
            again = self.peek()
            if again.kind == "op" and again.text == "^":
                raise ExprError("chained '^' needs parentheses", again.pos)
        return node

    def int_literal(self, what: str) -> int:
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            sign = -1
            tok = self.peek()
        if tok.kind != "num" or not tok.text.isdigit():
            raise ExprError(f"{what} must be an integer literal", tok.pos)
        self.advance()
        return sign * int(tok.text)

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Const(complex(float(tok.text), 0.0))
        if tok.kind == "imag":
            self.advance()
            return Const(complex(0.0, float(tok.text)))
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        if tok.kind == "name":
            return self.named(self.advance())
        raise ExprError("expected an operand", tok.pos)

    def named(self, tok: _Token) -> Expr:
        name = tok.text
        if name == "z":
            return Var()
        if name == "i":
            return Const(1j)
        if name in _UNARY_FUNCS:
            self.expect_op("(")
            arg = self.expr()
            closing = self.peek()
            if closing.kind == "op" and closing.text == ",":
                raise ExprError(f"{name} takes one argument", closing.pos)
            self.expect_op(")")
            return _UNARY_FUNCS[name](arg)
        if name in _WAVE_FUNCS:
            self.expect_op("(")
            m = self.int_literal("lattice index")
            self.expect_op(",")
            n = self.int_literal("lattice index")
            self.expect_op(")")
            order = _WAVE_FUNCS[name]
            return LatticeExp(m, n) if order is None else GroupAvg(order, m, n)
        raise ExprError(f"unknown identifier {name!r}", tok.pos)


def parse_expression(text: str) -> Expr:
    """Parse source text to an AST; raises ExprError with an offset."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Printer


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot print non-finite constant {x!r}")
    text = repr(float(x))
    return text[1:] if text.startswith("+") else text


def _fmt_const(value: complex) -> str:
    re_, im = value.real, value.imag
    if im == 0.0:
        return _fmt_float(re_) if re_ >= 0 else f"(0 - {_fmt_float(-re_)})"
    if re_ == 0.0:
        return f"{_fmt_float(im)}i" if im >= 0 else f"(0 - {_fmt_float(-im)}i)"
    sign = "+" if im >= 0 else "-"
    return f"({_fmt_float(re_)} {sign} {_fmt_float(abs(im))}i)"


def format_expression(node: Expr) -> str:
    """Render an AST back to parseable text.

    The output is fully parenthesized, and parsing it again yields a
    structurally equal AST (parse-time literal folding means constants
    always come back as single Const nodes).
    """
    if isinstance(node, Const):
        return _fmt_const(node.value)
    if isinstance(node, Var):
        return "z"
    if isinstance(node, Neg):
        return f"(-{format_expression(node.arg)})"
    if isinstance(node, Conj):
        return f"conj({format_expression(node.arg)})"
    if isinstance(node, Exp):
        return f"exp({format_expression(node.arg)})"
    if isinstance(node, Log):
        return f"log({format_expression(node.arg)})"
    if isinstance(node, Sin):
        return f"sin({format_expression(node.arg)})"
    if isinstance(node, Cos):
        return f"cos({format_expression(node.arg)})"
    if isinstance(node, Add):
        return f"({format_expression(node.left)} + {format_expression(node.right)})"
    if isinstance(node, Sub):
        return f"({format_expression(node.left)} - {format_expression(node.right)})"
    if isinstance(node, Mul):
        return f"({format_expression(node.left)} * {format_expression(node.right)})"
    if isinstance(node, Div):
        return f"({format_expression(node.left)} / {format_expression(node.right)})"
    if isinstance(node, IntPow):
        base = format_expression(node.base)
        if not isinstance(node.base, (Var, Conj, Exp, Log, Sin, Cos, LatticeExp, GroupAvg)):
            base = f"({base})"
        return f"{base}^{node.power}"
    if isinstance(node, LatticeExp):
        return f"E({node.m},{node.n})"
    if isinstance(node, GroupAvg):
        return f"W{node.order}({node.m},{node.n})"
    raise TypeError(f"not an Expr node: {node!r}")


# ---------------------------------------------------------------------------
# Evaluator


def _lattice_coords(z: np.ndarray, lattice: Lattice):
    x = np.real(z)
    y = np.imag(z)
    if lattice is Lattice.SQUARE:
        return x, y
    v = y / OMEGA.imag
    u = x - v * OMEGA.real
    return u, v


def _wave(m: int, n: int, z: np.ndarray, lattice: Lattice) -> np.ndarray:
    u, v = _lattice_coords(z, lattice)
    return np.exp(2j * np.pi * (m * u + n * v))


_ORBITS = {
    2: (1.0 + 0.0j, -1.0 + 0.0j),
    3: (1.0 + 0.0j, OMEGA, _OMEGA2),
    4: (1.0 + 0.0j, 1j, -1.0 + 0.0j, -1j),
}


def _eval(node: Expr, z: np.ndarray, lattice: Lattice) -> np.ndarray:
    if isinstance(node, Const):
        return np.complex128(node.value)
    if isinstance(node, Var):
        return z
    if isinstance(node, Neg):
        return -_eval(node.arg, z, lattice)
    if isinstance(node, Conj):
        return np.conj(_eval(node.arg, z, lattice))
    if isinstance(node, Add):
        return _eval(node.left, z, lattice) + _eval(node.right, z, lattice)
    if isinstance(node, Sub):
        return _eval(node.left, z, lattice) - _eval(node.right, z, lattice)
    if isinstance(node, Mul):
        return _eval(node.left, z, lattice) * _eval(node.right, z, lattice)
    if isinstance(node, Div):
        return _eval(node.left, z, lattice) / _eval(node.right, z, lattice)
    if isinstance(node, IntPow):
        return np.power(_eval(node.base, z, lattice), node.power)
    if isinstance(node, Exp):
        return np.exp(_eval(node.arg, z, lattice))
    if isinstance(node, Log):
        return np.log(_eval(node.arg, z, lattice))
    if isinstance(node, Sin):
        return np.sin(_eval(node.arg, z, lattice))
    if isinstance(node, Cos):
        return np.cos(_eval(node.arg, z, lattice))
    if isinstance(node, LatticeExp):
        return _wave(node.m, node.n, z, lattice)
    if isinstance(node, GroupAvg):
        total = None
        for rot in _ORBITS[node.order]:
            term = _wave(node.m, node.n, rot * z, lattice)
            total = term if total is None else total + term
        return total / node.order
    raise TypeError(f"not an Expr node: {node!r}")


def evaluate(node: Expr, z, lattice: Lattice = Lattice.SQUARE):
    """Evaluate an AST at z (complex scalar or complex numpy array).

    Faults (poles, log of 0, overflow) yield inf/nan entries instead of
    raising; callers that colorize treat those as out-of-range.
    """
    scalar = np.ndim(z) == 0 and not isinstance(z, np.ndarray)
    zz = np.asarray(z, dtype=np.complex128)
    with np.errstate(all="ignore"):
        result = np.asarray(_eval(node, zz, lattice), dtype=np.complex128)
    if result.shape != zz.shape:
        result = np.broadcast_to(result, zz.shape).copy()
    return complex(result[()]) if scalar else result
