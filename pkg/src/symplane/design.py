"""Design files: a JSON schema that describes one image or animation.

A design picks a mode (euclidean plane, hyperbolic half plane, or unit
disk), a function, a window, a color map and an out-of-range policy,
plus optional overlays and an optional animation block::

    {
      "schema": 1,
      "mode": "euclidean",
      "function": {"rosette": {"p": 6, "mirror_x": false,
                               "terms": [{"a": [0, 0.25], "m": 6, "n": 0, "spin": 1}]}},
      "window": {"x_min": -3, "x_max": 3, "y_min": -3, "y_max": 3,
                 "width_px": 800, "height_px": 800},
      "colormap": {"path": "maps/tides.png", "scale_factor": 500},
      "policy": {"wrap": [1000, 1000]},
      "overlays": [],
      "animation": {"theta": 0.010471975511965976, "frames": 100},
      "seed": 0
    }

Complex values are [re, im] pairs.  Function blocks: "expression" (text
in the little language, optional "lattice"), "rosette", "wallpaper", or
"symmetrize" (hyperbolic group averaging of a seed expression).

Animation multiplies the coefficient of every term with nonzero spin by
exp(i * frame * theta * spin), so spin +1 spins forward, -1 backward.
Frame 0 always equals the static render byte for byte.  Files are
written atomically (temp file in the target directory, then rename).

Validation collects every problem before failing, so one round trip
reports all bad fields at once.
"""

from __future__ import annotations

import cmath
import json
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Union

import numpy as np

from .colors import ColorMap, OutOfRange
from .euclid import (
    Pairing,
    RosetteTerm,
    WallpaperProduct,
    WallpaperTerm,
    build_rosette,
    build_wallpaper,
    lattice_for_order,
)
from .exprs import ExprError, Lattice, evaluate, parse_expression
from .halfplane import EuclideanCircle, Horocycle, Ray, Semicircle
from .modular import MAX_SUM_DEPTH, symmetrize
from .pngio import png_bytes
from .render import LatticeGrid, Overlay, VerticalLine, Window, draw_overlays, render

SCHEMA_VERSION = 1
DEFAULT_THETA = 2.0 * math.pi / 600.0
DEFAULT_FRAMES = 100


class DesignSpecError(ValueError):
    """Invalid design file; .errors lists every violated field."""

    def __init__(self, errors: list[str]):
        super().__init__("invalid design: " + "; ".join(errors))
        self.errors = list(errors)


@dataclass(frozen=True)
class ExpressionFunction:
    text: str
    lattice: Lattice = Lattice.SQUARE


@dataclass(frozen=True)
class RosetteFunction:
    p: int
    terms: tuple[RosetteTerm, ...]
    mirror_x: bool = False


@dataclass(frozen=True)
class WallpaperFunction:
    order: int
    terms: tuple[WallpaperTerm, ...] = ()
    products: tuple[WallpaperProduct, ...] = ()


@dataclass(frozen=True)
class SymmetrizeFunction:
    seed_text: str
    depth: int


FunctionSpec = Union[ExpressionFunction, RosetteFunction, WallpaperFunction, SymmetrizeFunction]


@dataclass(frozen=True)
class Animation:
    theta: float = DEFAULT_THETA
    frames: int = DEFAULT_FRAMES


@dataclass(frozen=True)
class DesignSpec:
    mode: str
    function: FunctionSpec
    window: Window
    colormap_path: str
    scale_factor: float
    policy: OutOfRange
    overlays: tuple[Overlay, ...] = ()
    animation: Animation | None = None
    seed: int = 0


# ---------------------------------------------------------------------------
# JSON -> DesignSpec


def _as_complex(value, field: str, errors: list[str]) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(part, (int, float)) for part in value)
    ):
        return complex(value[0], value[1])
    errors.append(f"{field}: expected a number or [re, im] pair, got {value!r}")
    return 0j


def _as_int(value, field: str, errors: list[str], minimum: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        errors.append(f"{field}: expected an integer, got {value!r}")
        return minimum if minimum is not None else 0
    if minimum is not None and value < minimum:
        errors.append(f"{field}: must be >= {minimum}, got {value}")
        return minimum
    return value


def _as_number(value, field: str, errors: list[str]) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        errors.append(f"{field}: expected a number, got {value!r}")
        return 0.0
    return float(value)


def _parse_function(data, errors: list[str], default_lattice: str = "square") -> FunctionSpec:
    fallback = ExpressionFunction("z")
    if isinstance(data, str):
        data = {"expression": data}
    if not isinstance(data, dict) or len(data) == 0:
        errors.append("function: expected an object or expression text")
        return fallback

    if "expression" in data:
        text = data["expression"]
        if not isinstance(text, str):
            errors.append("function.expression: expected text")
            return fallback
        lattice_name = data.get("lattice", default_lattice)
        if lattice_name not in ("square", "rhombic"):
            errors.append(f"function.lattice: expected 'square' or 'rhombic', got {lattice_name!r}")
            lattice_name = "square"
        try:
            parse_expression(text)
        except ExprError as exc:
            errors.append(f"function.expression: {exc}")
        return ExpressionFunction(text, Lattice(lattice_name))

    if "rosette" in data:
        block = data["rosette"] if isinstance(data["rosette"], dict) else {}
        if not isinstance(data["rosette"], dict):
            errors.append("function.rosette: expected an object")
        p = _as_int(block.get("p", 1), "function.rosette.p", errors, minimum=1)
        mirror = block.get("mirror_x", False)
        if not isinstance(mirror, bool):
            errors.append("function.rosette.mirror_x: expected true/false")
            mirror = False
        terms = []
        raw_terms = block.get("terms", [])
        if not isinstance(raw_terms, list) or not raw_terms:
            errors.append("function.rosette.terms: expected a non-empty list")
            raw_terms = []
        for idx, raw in enumerate(raw_terms):
            where = f"function.rosette.terms[{idx}]"
            if not isinstance(raw, dict):
                errors.append(f"{where}: expected an object")
                continue
            terms.append(
                RosetteTerm(
                    a=_as_complex(raw.get("a", 0), f"{where}.a", errors),
                    m=_as_int(raw.get("m", 0), f"{where}.m", errors),
                    n=_as_int(raw.get("n", 0), f"{where}.n", errors),
                    spin=_as_int(raw.get("spin", 0), f"{where}.spin", errors),
                )
            )
        func = RosetteFunction(p, tuple(terms), mirror)
        if terms:
            try:
                build_rosette(func.p, func.terms, func.mirror_x)
            except ValueError as exc:
                errors.append(f"function.rosette: {exc}")
        return func

    if "wallpaper" in data:
        block = data["wallpaper"] if isinstance(data["wallpaper"], dict) else {}
        if not isinstance(data["wallpaper"], dict):
            errors.append("function.wallpaper: expected an object")
        order = _as_int(block.get("order", 4), "function.wallpaper.order", errors)
        if order not in (2, 3, 4, 6):
            errors.append(f"function.wallpaper.order: must be 2, 3, 4 or 6, got {order}")
            order = 4
        terms = []
        for idx, raw in enumerate(block.get("terms", []) or []):
            where = f"function.wallpaper.terms[{idx}]"
            if not isinstance(raw, dict):
                errors.append(f"{where}: expected an object")
                continue
            pairing_name = raw.get("pairing", "none")
            if pairing_name not in ("none", "reflect_x", "point_pair"):
                errors.append(f"{where}.pairing: unknown pairing {pairing_name!r}")
                pairing_name = "none"
            terms.append(
                WallpaperTerm(
                    a=_as_complex(raw.get("a", 0), f"{where}.a", errors),
                    m=_as_int(raw.get("m", 0), f"{where}.m", errors),
                    n=_as_int(raw.get("n", 0), f"{where}.n", errors),
                    pairing=Pairing(pairing_name),
                    spin=_as_int(raw.get("spin", 0), f"{where}.spin", errors),
                )
            )
        products = []
        for idx, raw in enumerate(block.get("products", []) or []):
            where = f"function.wallpaper.products[{idx}]"
            if not isinstance(raw, dict):
                errors.append(f"{where}: expected an object")
                continue
            factors = []
            raw_factors = raw.get("factors", [])
            if not isinstance(raw_factors, list) or not raw_factors:
                errors.append(f"{where}.factors: expected a non-empty list")
                raw_factors = []
            for fidx, pair in enumerate(raw_factors):
                if (
                    isinstance(pair, (list, tuple))
                    and len(pair) == 2
                    and all(isinstance(part, int) for part in pair)
                ):
                    factors.append((pair[0], pair[1]))
                else:
                    errors.append(f"{where}.factors[{fidx}]: expected an [m, n] pair")
            products.append(
                WallpaperProduct(
                    a=_as_complex(raw.get("a", 0), f"{where}.a", errors),
                    factors=tuple(factors),
                    spin=_as_int(raw.get("spin", 0), f"{where}.spin", errors),
                )
            )
        func = WallpaperFunction(order, tuple(terms), tuple(products))
        if not terms and not products:
            errors.append("function.wallpaper: needs terms or products")
        else:
            try:
                build_wallpaper(func.order, func.terms, func.products)
            except ValueError as exc:
                errors.append(f"function.wallpaper: {exc}")
        return func

    if "symmetrize" in data:
        block = data["symmetrize"] if isinstance(data["symmetrize"], dict) else {}
        if not isinstance(data["symmetrize"], dict):
            errors.append("function.symmetrize: expected an object")
        text = block.get("seed_function", "")
        if not isinstance(text, str) or not text:
            errors.append("function.symmetrize.seed_function: expected expression text")
            text = "z"
        else:
            try:
                parse_expression(text)
            except ExprError as exc:
                errors.append(f"function.symmetrize.seed_function: {exc}")
        depth = _as_int(block.get("depth", 2), "function.symmetrize.depth", errors, minimum=0)
        if depth > MAX_SUM_DEPTH:
            errors.append(f"function.symmetrize.depth: must be <= {MAX_SUM_DEPTH}, got {depth}")
            depth = MAX_SUM_DEPTH
        return SymmetrizeFunction(text, depth)

    errors.append(f"function: unknown block {sorted(data.keys())!r}")
    return fallback


_SHAPE_PARSERS = {
    "vertical_line": lambda raw, err: VerticalLine(_as_number(raw.get("u", 0), "overlay.u", err)),
    "ray": lambda raw, err: Ray(_as_number(raw.get("u", 0), "overlay.u", err)),
    "semicircle": lambda raw, err: Semicircle(
        _as_number(raw.get("r", 1), "overlay.r", err),
        _as_number(raw.get("u", 0), "overlay.u", err),
    ),
    "horocycle": lambda raw, err: Horocycle(
        _as_number(raw.get("r", 1), "overlay.r", err),
        _as_number(raw.get("u", 0), "overlay.u", err),
    ),
    "circle": lambda raw, err: EuclideanCircle(
        _as_complex(raw.get("center", 0), "overlay.center", err),
        _as_number(raw.get("radius", 1), "overlay.radius", err),
    ),
    "lattice_grid": lambda raw, err: LatticeGrid(
        _as_complex(raw.get("u", [1, 0]), "overlay.u", err),
        _as_complex(raw.get("v", [0, 1]), "overlay.v", err),
    ),
}


def _parse_overlays(data, errors: list[str]) -> tuple[Overlay, ...]:
    if data is None:
        return ()
    if not isinstance(data, list):
        errors.append("overlays: expected a list")
        return ()
    overlays = []
    for idx, raw in enumerate(data):
        where = f"overlays[{idx}]"
        if not isinstance(raw, dict):
            errors.append(f"{where}: expected an object")
            continue
        kind = raw.get("shape")
        if kind not in _SHAPE_PARSERS:
            errors.append(f"{where}.shape: unknown shape {kind!r}")
            continue
        local: list[str] = []
        try:
            shape = _SHAPE_PARSERS[kind](raw, local)
        except ValueError as exc:
            local.append(str(exc))
            shape = None
        errors.extend(f"{where}.{msg}" for msg in local)
        color_raw = raw.get("color", [255, 255, 255])
        if (
            not isinstance(color_raw, list)
            or len(color_raw) != 3
            or not all(isinstance(c, int) and 0 <= c <= 255 for c in color_raw)
        ):
            errors.append(f"{where}.color: expected [r, g, b] with 0..255 entries")
            color_raw = [255, 255, 255]
        stroke = _as_int(raw.get("stroke_px", 1), f"{where}.stroke_px", errors, minimum=1)
        if shape is not None:
            overlays.append(Overlay(shape, (color_raw[0], color_raw[1], color_raw[2]), stroke))
    return tuple(overlays)


def _function_has_spin(func: FunctionSpec) -> bool:
    if isinstance(func, RosetteFunction):
        return any(term.spin != 0 for term in func.terms)
    if isinstance(func, WallpaperFunction):
        return any(term.spin != 0 for term in func.terms) or any(
            product.spin != 0 for product in func.products
        )
    return False


def design_from_json(data: dict, base_dir: str = ".") -> DesignSpec:
    """Validate a parsed JSON document; raises DesignSpecError with every problem."""
    errors: list[str] = []
    if not isinstance(data, dict):
        raise DesignSpecError(["design: expected a JSON object"])

    if data.get("schema") != SCHEMA_VERSION:
        errors.append(f"schema: expected {SCHEMA_VERSION}, got {data.get('schema')!r}")

    mode = data.get("mode")
    if mode not in ("euclidean", "hyperbolic", "disk"):
        errors.append(f"mode: expected euclidean/hyperbolic/disk, got {mode!r}")
        mode = "euclidean"

    # lattice may sit at the top level; a lattice inside the function
    # block wins when both are present
    default_lattice = data.get("lattice", "square")
    if default_lattice not in ("square", "rhombic"):
        errors.append(f"lattice: expected 'square' or 'rhombic', got {default_lattice!r}")
        default_lattice = "square"

    func = _parse_function(data.get("function"), errors, default_lattice)

    window_raw = data.get("window")
    window = None
    if not isinstance(window_raw, dict):
        errors.append("window: expected an object")
    else:
        fields = {}
        for key in ("x_min", "x_max", "y_min", "y_max"):
            fields[key] = _as_number(window_raw.get(key, 0), f"window.{key}", errors)
        fields["width_px"] = _as_int(window_raw.get("width_px", 1), "window.width_px", errors, minimum=1)
        fields["height_px"] = _as_int(window_raw.get("height_px", 1), "window.height_px", errors, minimum=1)
        try:
            window = Window(**fields)
        except ValueError as exc:
            errors.append(f"window: {exc}")
    if window is None:
        window = Window(-1.0, 1.0, -1.0, 1.0, 8, 8)

    if mode == "hyperbolic" and window.y_min <= 0:
        errors.append(f"window.y_min: must be > 0 in hyperbolic mode, got {window.y_min}")
    if mode == "disk" and (window.x_min, window.x_max, window.y_min, window.y_max) != (-1.0, 1.0, -1.0, 1.0):
        errors.append("window: disk mode requires the unit square x,y in [-1, 1]")

    cmap_raw = data.get("colormap")
    cmap_path = ""
    scale = 10.0
    if not isinstance(cmap_raw, dict):
        errors.append("colormap: expected an object with path and scale_factor")
    else:
        path = cmap_raw.get("path")
        if not isinstance(path, str) or not path:
            errors.append("colormap.path: expected a file path")
        else:
            cmap_path = path if os.path.isabs(path) else os.path.join(base_dir, path)
        scale = _as_number(cmap_raw.get("scale_factor", 10.0), "colormap.scale_factor", errors)
        if not scale > 0:
            errors.append(f"colormap.scale_factor: must be positive, got {scale}")
            scale = 10.0

    policy_raw = data.get("policy", "black")
    policy = OutOfRange.black()
    if policy_raw in ("black", "clamp"):
        policy = OutOfRange(policy_raw)
    elif isinstance(policy_raw, dict) and set(policy_raw.keys()) == {"wrap"}:
        periods = policy_raw["wrap"]
        if (
            isinstance(periods, list)
            and len(periods) == 2
            and all(isinstance(p, (int, float)) and p > 0 for p in periods)
        ):
            policy = OutOfRange.wrap(periods[0], periods[1])
        else:
            errors.append("policy.wrap: expected two positive periods")
    else:
        errors.append(f"policy: expected 'black', 'clamp' or {{'wrap': [pu, pv]}}, got {policy_raw!r}")

    overlays = _parse_overlays(data.get("overlays"), errors)

    animation = None
    anim_raw = data.get("animation")
    if anim_raw is not None:
        if not isinstance(anim_raw, dict):
            errors.append("animation: expected an object")
        else:
            theta = anim_raw.get("theta", DEFAULT_THETA)
            theta = _as_number(theta, "animation.theta", errors)
            if not math.isfinite(theta) or theta == 0:
                errors.append(f"animation.theta: expected a nonzero finite angle, got {theta}")
                theta = DEFAULT_THETA
            frames = _as_int(anim_raw.get("frames", DEFAULT_FRAMES), "animation.frames", errors, minimum=1)
            animation = Animation(theta, frames)
        if not _function_has_spin(func):
            errors.append("animation: the function has no terms with nonzero spin to animate")

    seed = _as_int(data.get("seed", 0), "seed", errors)

    if errors:
        raise DesignSpecError(errors)
    return DesignSpec(
        mode=mode,
        function=func,
        window=window,
        colormap_path=cmap_path,
        scale_factor=scale,
        policy=policy,
        overlays=overlays,
        animation=animation,
        seed=seed,
    )


def load_design(path: str) -> DesignSpec:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return design_from_json(data, base_dir=os.path.dirname(os.path.abspath(path)))


# ---------------------------------------------------------------------------
# DesignSpec -> JSON


def _complex_json(value: complex) -> list[float]:
    return [float(value.real), float(value.imag)]


def _function_json(func: FunctionSpec) -> dict:
    if isinstance(func, ExpressionFunction):
        return {"expression": func.text, "lattice": func.lattice.value}
    if isinstance(func, RosetteFunction):
        return {
            "rosette": {
                "p": func.p,
                "mirror_x": func.mirror_x,
                "terms": [
                    {"a": _complex_json(t.a), "m": t.m, "n": t.n, "spin": t.spin}
                    for t in func.terms
                ],
            }
        }
    if isinstance(func, WallpaperFunction):
        return {
            "wallpaper": {
                "order": func.order,
                "terms": [
                    {
                        "a": _complex_json(t.a),
                        "m": t.m,
                        "n": t.n,
                        "pairing": t.pairing.value,
                        "spin": t.spin,
                    }
                    for t in func.terms
                ],
                "products": [
                    {
                        "a": _complex_json(p.a),
                        "factors": [list(pair) for pair in p.factors],
                        "spin": p.spin,
                    }
                    for p in func.products
                ],
            }
        }
    if isinstance(func, SymmetrizeFunction):
        return {"symmetrize": {"seed_function": func.seed_text, "depth": func.depth}}
    raise TypeError(f"not a function spec: {func!r}")


def _overlay_json(overlay: Overlay) -> dict:
    shape = overlay.shape
    if isinstance(shape, VerticalLine):
        body = {"shape": "vertical_line", "u": shape.u}
    elif isinstance(shape, Ray):
        body = {"shape": "ray", "u": shape.u}
    elif isinstance(shape, Semicircle):
        body = {"shape": "semicircle", "r": shape.r, "u": shape.u}
    elif isinstance(shape, Horocycle):
        body = {"shape": "horocycle", "r": shape.r, "u": shape.u}
    elif isinstance(shape, EuclideanCircle):
        body = {"shape": "circle", "center": _complex_json(shape.center), "radius": shape.radius}
    elif isinstance(shape, LatticeGrid):
        body = {"shape": "lattice_grid", "u": _complex_json(shape.u), "v": _complex_json(shape.v)}
    else:
        raise TypeError(f"not an overlay shape: {shape!r}")
    body["color"] = list(overlay.color)
    body["stroke_px"] = overlay.stroke_px
    return body


def design_to_json(spec: DesignSpec) -> dict:
    """Inverse of design_from_json up to path resolution."""
    data = {
        "schema": SCHEMA_VERSION,
        "mode": spec.mode,
        "function": _function_json(spec.function),
        "window": {
            "x_min": spec.window.x_min,
            "x_max": spec.window.x_max,
            "y_min": spec.window.y_min,
            "y_max": spec.window.y_max,
            "width_px": spec.window.width_px,
            "height_px": spec.window.height_px,
        },
        "colormap": {"path": spec.colormap_path, "scale_factor": spec.scale_factor},
        "policy": (
            spec.policy.kind
            if spec.policy.kind != "wrap"
            else {"wrap": [spec.policy.period_u, spec.policy.period_v]}
        ),
        "overlays": [_overlay_json(o) for o in spec.overlays],
        "seed": spec.seed,
    }
    if spec.animation is not None:
        data["animation"] = {"theta": spec.animation.theta, "frames": spec.animation.frames}
    return data


# ---------------------------------------------------------------------------
# Execution


def _spin_function(func: FunctionSpec, phase_angle: float) -> FunctionSpec:
    """Multiply every spinning coefficient by exp(i * spin * phase_angle)."""
    if isinstance(func, RosetteFunction):
        return replace(
            func,
            terms=tuple(
                replace(t, a=t.a * cmath.exp(1j * t.spin * phase_angle)) if t.spin else t
                for t in func.terms
            ),
        )
    if isinstance(func, WallpaperFunction):
        return replace(
            func,
            terms=tuple(
                replace(t, a=t.a * cmath.exp(1j * t.spin * phase_angle)) if t.spin else t
                for t in func.terms
            ),
            products=tuple(
                replace(p, a=p.a * cmath.exp(1j * p.spin * phase_angle)) if p.spin else p
                for p in func.products
            ),
        )
    return func


def frame_function(spec: DesignSpec, frame: int) -> FunctionSpec:
    """The function spec rendered at animation frame n (coefficients substituted)."""
    if spec.animation is None:
        raise ValueError("design has no animation block")
    return _spin_function(spec.function, spec.animation.theta * frame)


def build_callable(func: FunctionSpec) -> Callable[[np.ndarray], np.ndarray]:
    """Compile a function spec into an array-in, array-out callable."""
    if isinstance(func, ExpressionFunction):
        ast = parse_expression(func.text)
        lattice = func.lattice
        return lambda z: evaluate(ast, z, lattice)
    if isinstance(func, RosetteFunction):
        ast = build_rosette(func.p, func.terms, func.mirror_x)
        return lambda z: evaluate(ast, z, Lattice.SQUARE)
    if isinstance(func, WallpaperFunction):
        ast = build_wallpaper(func.order, func.terms, func.products)
        lattice = lattice_for_order(func.order)
        return lambda z: evaluate(ast, z, lattice)
    if isinstance(func, SymmetrizeFunction):
        return symmetrize(parse_expression(func.seed_text), func.depth)
    raise TypeError(f"not a function spec: {func!r}")


def effective_window(spec: DesignSpec) -> Window:
    """The window actually sampled; hyperbolic mode keeps clear of y = 0."""
    window = spec.window
    if spec.mode == "hyperbolic":
        floor = window.dy / 2.0
        if window.y_min < floor:
            window = Window(
                window.x_min, window.x_max, floor, window.y_max,
                window.width_px, window.height_px,
            )
    return window


def atomic_write_bytes(path: str, payload: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def run_design(
    spec: DesignSpec,
    out_path: str | None = None,
    workers: int = 1,
    function: FunctionSpec | None = None,
) -> np.ndarray:
    """Render a design to pixels (and optionally to a PNG file)."""
    func = spec.function if function is None else function
    f = build_callable(func)
    cmap = ColorMap.from_file(spec.colormap_path, spec.scale_factor)
    img = render(f, effective_window(spec), cmap, spec.policy, workers=workers)
    if spec.overlays:
        img = draw_overlays(img, effective_window(spec), spec.overlays)
    if out_path is not None:
        atomic_write_bytes(out_path, png_bytes(img))
    return img


def animate(
    spec: DesignSpec,
    out_dir: str,
    workers: int = 1,
    frame_workers: int = 1,
) -> dict:
    """Render every animation frame plus a manifest.json into out_dir.

    Frame n multiplies each spinning coefficient by exp(i*n*theta*spin);
    frame 0 is byte-identical to the static render.  Returns the
    manifest (also written, atomically, like every frame file).
    """
    if spec.animation is None:
        raise ValueError("design has no animation block")
    os.makedirs(out_dir, exist_ok=True)
    frames = spec.animation.frames
    names = [f"frame_{n:04d}.png" for n in range(frames)]

    def emit(n: int) -> None:
        run_design(spec, os.path.join(out_dir, names[n]), workers=workers,
                   function=frame_function(spec, n))

    if frame_workers == 1:
        for n in range(frames):
            emit(n)
    else:
        with ThreadPoolExecutor(max_workers=frame_workers) as pool:
            list(pool.map(emit, range(frames)))

    manifest = {
        "frames": frames,
        "theta": spec.animation.theta,
        "files": names,
        "parameters": [
            {"frame": n, "p": _complex_json(cmath.exp(1j * spec.animation.theta * n))}
            for n in range(frames)
        ],
    }
    payload = json.dumps(manifest, indent=2).encode("utf-8")
    atomic_write_bytes(os.path.join(out_dir, "manifest.json"), payload)
    return manifest
