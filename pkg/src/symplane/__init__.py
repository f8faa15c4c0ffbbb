"""symplane: symmetric images from complex functions.

Domain coloring for functions C -> C with built-in constructors for
rosette, wallpaper and hyperbolic (modular-group) symmetry, a small
expression language, geometry helpers for the upper half plane, a
deterministic PNG renderer and a JSON design-file pipeline with a CLI.
"""

from .colors import BLACK, ColorMap, OutOfRange, round_half_away, sample_colormap, sample_colormap_array
from .design import (
    Animation,
    DesignSpec,
    DesignSpecError,
    ExpressionFunction,
    RosetteFunction,
    SymmetrizeFunction,
    WallpaperFunction,
    animate,
    build_callable,
    design_from_json,
    design_to_json,
    frame_function,
    load_design,
    run_design,
)
from .euclid import (
    Pairing,
    RosetteTerm,
    WallpaperProduct,
    WallpaperTerm,
    build_rosette,
    build_wallpaper,
    check_symmetry,
    conjugation,
    demo_functions,
    is_crystallographic,
    lattice_for_order,
    lattice_wrap,
    negation,
    rotation,
    rotation_about,
    sample_points,
    translation,
)
from .exprs import ExprError, Lattice, evaluate, format_expression, parse_expression
from .halfplane import (
    EuclideanCircle,
    Horocycle,
    Invert,
    MobiusReal,
    Ray,
    Scale,
    Semicircle,
    Translate,
    apply_word,
    cayley_from_disk,
    cayley_to_disk,
    compose_word,
    curve_length,
    geodesic_through,
    hyperbolic_circle,
    hyperbolic_distance,
    mobius_compose,
    mobius_inverse,
    rect_area,
    special_word,
)
from .modular import (
    CoprimeNode,
    GammaWord,
    MobiusInt,
    conjugate_center,
    coprime_tree,
    element_order,
    gamma_elements,
    gamma_word_decompose,
    in_fundamental_domain,
    reduce_to_fundamental_domain,
    sum_over_elements,
    symmetrize,
)
from .pngio import png_bytes, read_png, write_png
from .render import (
    LatticeGrid,
    Overlay,
    VerticalLine,
    Window,
    draw_overlays,
    image_rotation_residual,
    render,
)
from .verify import run_verification

__version__ = "0.1.0"

__all__ = [
    "Animation",
    "BLACK",
    "ColorMap",
    "CoprimeNode",
    "DesignSpec",
    "DesignSpecError",
    "EuclideanCircle",
    "ExprError",
    "ExpressionFunction",
    "GammaWord",
    "Horocycle",
    "Invert",
    "Lattice",
    "LatticeGrid",
    "MobiusInt",
    "MobiusReal",
    "OutOfRange",
    "Overlay",
    "Pairing",
    "Ray",
    "RosetteFunction",
    "RosetteTerm",
    "Scale",
    "Semicircle",
    "SymmetrizeFunction",
    "Translate",
    "VerticalLine",
    "WallpaperFunction",
    "WallpaperProduct",
    "WallpaperTerm",
    "Window",
    "animate",
    "apply_word",
    "build_callable",
    "build_rosette",
    "build_wallpaper",
    "cayley_from_disk",
    "cayley_to_disk",
    "check_symmetry",
    "compose_word",
    "conjugate_center",
    "conjugation",
    "coprime_tree",
    "curve_length",
    "demo_functions",
    "design_from_json",
    "design_to_json",
    "draw_overlays",
    "element_order",
    "evaluate",
    "format_expression",
    "frame_function",
    "gamma_elements",
    "gamma_word_decompose",
    "geodesic_through",
    "hyperbolic_circle",
    "hyperbolic_distance",
    "image_rotation_residual",
    "in_fundamental_domain",
    "is_crystallographic",
    "lattice_for_order",
    "lattice_wrap",
    "load_design",
    "mobius_compose",
    "mobius_inverse",
    "negation",
    "parse_expression",
    "png_bytes",
    "read_png",
    "rect_area",
    "reduce_to_fundamental_domain",
    "render",
    "rotation",
    "rotation_about",
    "round_half_away",
    "run_design",
    "run_verification",
    "sample_colormap",
    "sample_colormap_array",
    "sample_points",
    "special_word",
    "sum_over_elements",
    "symmetrize",
    "translation",
    "write_png",
]
