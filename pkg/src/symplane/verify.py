"""Built-in verification suite, exposed as the `verify` CLI verb.

Every check is a zero-argument callable returning (ok, detail).  The
driver prints one PASS/FAIL line per check and is expected to finish
in well under two minutes on a small desktop machine.  Checks are
grouped into the "euclid" and "hyperbolic" suites; `--suite all` runs
both.
"""

from __future__ import annotations

import hashlib
import math
import time
from importlib import resources
from typing import Callable, Iterable

import numpy as np

from . import euclid, halfplane, modular
from .design import frame_function, load_design, run_design
from .exprs import Lattice, evaluate, parse_expression
from .pngio import png_bytes
from .render import image_rotation_residual

RESIDUAL_TOL = 1e-9
SAMPLES = 10_000

ROSETTE_DESIGN = "sixfold_rosette.json"
WALLPAPER_DESIGN = "fourfold_wallpaper.json"
HYPERBOLIC_DESIGN = "hyperbolic_mirror.json"


def design_path(name: str) -> str:
    """Filesystem path of a design file shipped with the package."""
    return str(resources.files(__package__).joinpath("designs", name))


def pixel_digest(img: np.ndarray) -> str:
    """sha256 of the raw pixel bytes; stable across PNG encoder versions."""
    return hashlib.sha256(np.ascontiguousarray(img).tobytes()).hexdigest()


# ---------------------------------------------------------------------------
# Euclidean checks


def _residual_cases() -> list[tuple[str, list]]:
    omega = euclid.OMEGA
    return [
        ("sixfold-rosette", [euclid.rotation(2 * math.pi / 6)]),
        ("fivefold-mirror-rosette", [euclid.rotation(2 * math.pi / 5), euclid.conjugation()]),
        (
            "fourfold-wallpaper",
            [
                euclid.rotation(math.pi / 2),
                euclid.translation(1),
                euclid.translation(1j),
                euclid.conjugation(),
            ],
        ),
        (
            "threefold-product-wallpaper",
            [euclid.rotation(2 * math.pi / 3), euclid.translation(1), euclid.translation(omega)],
        ),
        ("sixfold-wallpaper", [euclid.negation(), euclid.rotation(2 * math.pi / 3)]),
    ]


def check_euclidean_residuals() -> tuple[bool, str]:
    designs = euclid.demo_functions()
    worst = 0.0
    worst_name = ""
    for name, transforms in _residual_cases():
        ast, lattice = designs[name]
        for idx, transform in enumerate(transforms):
            residual = euclid.check_symmetry(
                ast, transform, samples=SAMPLES, lattice=lattice, seed=idx
            )
            if residual > worst:
                worst, worst_name = residual, name
    return worst < RESIDUAL_TOL, f"max residual {worst:.3e} ({worst_name})"


def check_image_rotation() -> tuple[bool, str]:
    spec = load_design(design_path(ROSETTE_DESIGN))
    img = run_design(spec, workers=4)
    fraction = image_rotation_residual(img, 2 * math.pi / 6)
    return fraction < 0.01, f"mismatched pixel fraction {fraction:.5f} at 2*pi/6"


def check_crystallographic() -> tuple[bool, str]:
    got = {n for n in range(2, 25) if euclid.is_crystallographic(n)}
    return got == {2, 3, 4, 6}, f"orders found: {sorted(got)}"


# ---------------------------------------------------------------------------
# Hyperbolic checks


def check_coprime_trees() -> tuple[bool, str]:
    seen: set[tuple[int, int]] = set()
    problems: list[str] = []
    sizes = []
    for root in ((2, 1), (3, 1)):
        nodes = modular.coprime_tree(root, 6)
        sizes.append(len(nodes))
        for node in nodes:
            if math.gcd(node.j, node.k) != 1:
                problems.append(f"gcd != 1 at {(node.j, node.k)}")
            if node.bezout_u * node.j + node.bezout_v * node.k != 1:
                problems.append(f"Bezout identity fails at {(node.j, node.k)}")
            if (node.j, node.k) in seen:
                problems.append(f"duplicate pair {(node.j, node.k)}")
            seen.add((node.j, node.k))
        children = [(n.j, n.k) for n in nodes[1:4]]
        bezout = [(n.bezout_u, n.bezout_v) for n in nodes[1:4]]
        expected = {(2, 1): [(3, 2), (5, 2), (4, 1)], (3, 1): [(5, 3), (7, 3), (5, 1)]}[root]
        if children != expected:
            problems.append(f"children of {root}: {children}")
        if bezout != [(-1, 2), (1, -2), (0, 1)]:
            problems.append(f"Bezout children of {root}: {bezout}")
    ok = not problems and sizes == [1093, 1093]
    detail = f"{sizes[0]}+{sizes[1]} nodes, {len(seen)} distinct pairs"
    if problems:
        detail += "; " + "; ".join(problems[:3])
    return ok, detail


def check_domain_reduction() -> tuple[bool, str]:
    rng = np.random.default_rng(17)
    count = 100_000
    xs = rng.uniform(-50.0, 50.0, count)
    ys = 10.0 ** rng.uniform(-3.0, 3.0, count)
    worst_round = 0.0
    for x, y in zip(xs.tolist(), ys.tolist()):
        z = complex(x, y)
        w, word = modular.reduce_to_fundamental_domain(z)
        if not modular.in_fundamental_domain(w, tol=1e-9):
            return False, f"{z} reduced outside the fundamental domain: {w}"
        back = word.inverse().apply(w)
        err = abs(back - z)
        if err > worst_round:
            worst_round = err
    return worst_round < 1e-9, f"{count} points, worst round-trip {worst_round:.3e}"


def check_word_roundtrip() -> tuple[bool, str]:
    rng = np.random.default_rng(23)
    failures = 0
    for _ in range(100):
        length = int(rng.integers(1, 13))
        m = modular.MobiusInt.identity()
        for _ in range(length):
            step = int(rng.integers(0, 3))
            if step == 0:
                m = m.compose(modular.MobiusInt.t_power(1))
            elif step == 1:
                m = m.compose(modular.MobiusInt.t_power(-1))
            else:
                m = m.compose(modular.MobiusInt.inversion())
        word = modular.gamma_word_decompose(m)
        if word.to_mobius() != m:
            failures += 1
    return failures == 0, f"100 words, {failures} recomposition failures"


def check_metric_suite() -> tuple[bool, str]:
    rng = np.random.default_rng(31)
    problems: list[str] = []

    worst = 0.0
    for _ in range(100):
        steps: list[halfplane.WordStep] = []
        for _ in range(int(rng.integers(1, 6))):
            kind = int(rng.integers(0, 3))
            if kind == 0:
                steps.append(halfplane.Translate(float(rng.uniform(-3, 3))))
            elif kind == 1:
                steps.append(halfplane.Scale(float(rng.uniform(0.2, 5.0))))
            else:
                steps.append(halfplane.Invert())
        g = halfplane.compose_word(steps)
        z = complex(rng.uniform(-3, 3), rng.uniform(0.1, 5.0))
        w = complex(rng.uniform(-3, 3), rng.uniform(0.1, 5.0))
        gap = abs(
            halfplane.hyperbolic_distance(g.apply(z), g.apply(w))
            - halfplane.hyperbolic_distance(z, w)
        )
        worst = max(worst, gap)
    if worst >= 1e-9:
        problems.append(f"isometry invariance worst {worst:.3e}")

    worst_axis = 0.0
    for _ in range(100):
        y1 = float(10.0 ** rng.uniform(-2, 2))
        y2 = float(10.0 ** rng.uniform(-2, 2))
        gap = abs(halfplane.hyperbolic_distance(1j * y1, 1j * y2) - abs(math.log(y2 / y1)))
        worst_axis = max(worst_axis, gap)
    if worst_axis >= 1e-12:
        problems.append(f"vertical-axis distance worst {worst_axis:.3e}")

    # Im(Mz)*|cz+d|^2 == Im z, checked on random normalized maps.
    worst_im = 0.0
    for _ in range(100):
        a, b, c, d = (float(rng.uniform(-3, 3)) for _ in range(4))
        det = a * d - b * c
        if abs(det) < 1e-3:
            continue
        if det < 0:
            a, b = -a, -b
            det = -det
        try:
            g = halfplane.MobiusReal(a, b, c, d)
        except ValueError:
            continue
        z = complex(rng.uniform(-3, 3), rng.uniform(0.05, 5.0))
        denom = abs(g.c * z + g.d) ** 2
        rel = abs(g.apply(z).imag * denom - z.imag) / z.imag
        worst_im = max(worst_im, rel)
    if worst_im >= 1e-12:
        problems.append(f"height identity worst {worst_im:.3e}")

    circle = halfplane.hyperbolic_circle(2 + 3j, 0.7)
    angles = np.linspace(0.0, 2 * math.pi, 360, endpoint=False)
    worst_circle = max(
        abs(
            halfplane.hyperbolic_distance(
                2 + 3j, circle.center + circle.radius * complex(math.cos(t), math.sin(t))
            )
            - 0.7
        )
        for t in angles.tolist()
    )
    if worst_circle >= 1e-9:
        problems.append(f"equidistant circle worst {worst_circle:.3e}")

    turn = modular.MobiusInt.t_power(1).compose(modular.MobiusInt.inversion())
    z0 = complex(0.5, math.sqrt(3.0) / 2.0)
    order = modular.element_order(turn)
    if order != 3:
        problems.append(f"T*I order {order}")
    if abs(turn.apply(z0) - z0) >= 1e-12:
        problems.append(f"T*I moves {z0} by {abs(turn.apply(z0) - z0):.3e}")

    conj = modular.MobiusInt.inversion().compose(modular.MobiusInt.t_power(-2))
    center, conj_order = modular.conjugate_center(turn, z0, conj)
    target = complex(0.5, math.sqrt(3.0) / 6.0)
    if abs(center - target) >= 1e-9 or conj_order != 3:
        problems.append(f"conjugated center {center} (order {conj_order})")

    ok = not problems
    return ok, "; ".join(problems) if problems else "isometry, axis, height, circle, centers all ok"


def check_symmetrize_oracle() -> tuple[bool, str]:
    ast = parse_expression("exp(2i*((z - conj(z))/2i))")
    seed_f = lambda z: evaluate(ast, z, Lattice.SQUARE)

    counts = []
    for depth in range(5):
        counts.append(len(modular.gamma_elements(depth)))
    if counts != [6, 18, 54, 162, 486]:
        return False, f"element counts {counts}"

    symmetric = modular.symmetrize(ast, 3)

    # Independent flat enumeration: identity and inversion composed with
    # every tree element, accumulated in one loop with no shared helpers.
    def flat(z: complex) -> complex:
        total = 0j
        blocks: list[tuple[int, int, int, int]] = [(1, 0, 0, 1), (0, -1, 1, 0)]
        for root in ((2, 1), (3, 1)):
            for node in modular.coprime_tree(root, 3):
                u, v = node.bezout_u, node.bezout_v
                blocks.append((node.j, node.k, -v, u))
                blocks.append((-node.j, node.k, -v, -u))
        for j, k, m, n in blocks:
            gz = (j * z + k) / (m * z + n)
            total += complex(seed_f(gz))
        return total

    rng = np.random.default_rng(41)
    worst = 0.0
    for _ in range(100):
        z = complex(rng.uniform(-2, 2), rng.uniform(0.2, 3.0))
        gap = abs(complex(symmetric(z)) - flat(z))
        worst = max(worst, gap)
    detail = f"counts {counts}, worst gap {worst:.3e} over 100 points"
    return worst < 1e-12, detail


# ---------------------------------------------------------------------------
# Determinism


def check_determinism_euclidean() -> tuple[bool, str]:
    problems: list[str] = []
    rosette = load_design(design_path(ROSETTE_DESIGN))
    first = run_design(rosette, workers=4)
    second = run_design(rosette, workers=4)
    if png_bytes(first) != png_bytes(second):
        problems.append("repeat render differs")

    wallpaper = load_design(design_path(WALLPAPER_DESIGN))
    serial = run_design(wallpaper, workers=1)
    threaded = run_design(wallpaper, workers=4)
    if png_bytes(serial) != png_bytes(threaded):
        problems.append("1 vs 4 workers differ")

    frame0 = run_design(rosette, workers=4, function=frame_function(rosette, 0))
    if png_bytes(frame0) != png_bytes(first):
        problems.append("animation frame 0 differs from static render")

    digests = f"rosette {pixel_digest(first)[:12]}, wallpaper {pixel_digest(serial)[:12]}"
    return not problems, "; ".join(problems) if problems else digests


def check_determinism_hyperbolic() -> tuple[bool, str]:
    spec = load_design(design_path(HYPERBOLIC_DESIGN))
    first = run_design(spec, workers=4)
    second = run_design(spec, workers=1)
    if png_bytes(first) != png_bytes(second):
        return False, "repeat render differs"
    return True, f"hyperbolic {pixel_digest(first)[:12]}"


# ---------------------------------------------------------------------------
# Driver

Check = tuple[str, str, Callable[[], tuple[bool, str]]]

CHECKS: list[Check] = [
    ("euclid", "euclidean-residuals", check_euclidean_residuals),
    ("euclid", "image-rotation", check_image_rotation),
    ("euclid", "crystallographic-orders", check_crystallographic),
    ("hyperbolic", "coprime-trees", check_coprime_trees),
    ("hyperbolic", "domain-reduction", check_domain_reduction),
    ("hyperbolic", "word-roundtrip", check_word_roundtrip),
    ("hyperbolic", "metric-suite", check_metric_suite),
    ("hyperbolic", "symmetrize-oracle", check_symmetrize_oracle),
    ("euclid", "determinism-euclidean", check_determinism_euclidean),
    ("hyperbolic", "determinism-hyperbolic", check_determinism_hyperbolic),
]


def run_verification(suite: str = "all", out: Callable[[str], None] = print) -> bool:
    """Run one or both suites, print one line per check, return overall status."""
    if suite not in ("euclid", "hyperbolic", "all"):
        raise ValueError(f"unknown suite {suite!r}; expected euclid, hyperbolic or all")
    start = time.perf_counter()
    all_ok = True
    for group, name, fn in CHECKS:
        if suite != "all" and group != suite:
            continue
        tick = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:
            ok, detail = False, f"raised {exc!r}"
        elapsed = time.perf_counter() - tick
        all_ok = all_ok and ok
        out(f"{'PASS' if ok else 'FAIL'} {name}: {detail} ({elapsed:.2f}s)")
    total = time.perf_counter() - start
    out(f"{'OK' if all_ok else 'FAILED'} suite={suite} total {total:.1f}s")
    return all_ok
