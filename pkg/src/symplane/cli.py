"""Command line interface.

Verbs: render, animate, verify, tree, reduce, parse.  Exit codes are a
stable contract for scripting: 0 success, 1 validation error (bad
arguments, bad design file, bad expression, failed verification),
2 runtime fault (I/O problems, iteration caps).
"""

from __future__ import annotations

import argparse
import sys

from .design import DesignSpecError, animate, load_design, run_design
from .exprs import ExprError, format_expression, parse_expression
from .modular import coprime_tree, reduce_to_fundamental_domain
from .verify import run_verification

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


class _Parser(argparse.ArgumentParser):
    # usage problems are validation errors, not the argparse default of 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _cmd_render(args) -> int:
    spec = load_design(args.spec)
    run_design(spec, out_path=args.output, workers=args.workers)
    print(f"wrote {args.output}")
    return EXIT_OK


def _cmd_animate(args) -> int:
    spec = load_design(args.spec)
    manifest = animate(spec, args.output, workers=args.workers, frame_workers=args.frame_workers)
    print(f"wrote {manifest['frames']} frames and manifest.json to {args.output}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    ok = run_verification(suite=args.suite)
    return EXIT_OK if ok else EXIT_VALIDATION


def _cmd_tree(args) -> int:
    parts = args.root.split(",")
    if len(parts) != 2:
        raise ValueError(f"--root expects two integers like 2,1, got {args.root!r}")
    root = (int(parts[0]), int(parts[1]))
    for node in coprime_tree(root, args.depth):
        print(f"({node.j}, {node.k})  bezout ({node.bezout_u}, {node.bezout_v})")
    return EXIT_OK


def _cmd_reduce(args) -> int:
    parts = args.point.split(",")
    if len(parts) != 2:
        raise ValueError(f"--point expects two reals like 0.1,0.2, got {args.point!r}")
    z = complex(float(parts[0]), float(parts[1]))
    w, word = reduce_to_fundamental_domain(z)
    steps = " I ".join(f"T^{p}" for p in reversed(word.powers))
    print(f"point   {z}")
    print(f"reduced {w}")
    print(f"word    {steps}  powers={list(word.powers)}")
    return EXIT_OK


def _cmd_parse(args) -> int:
    node = parse_expression(args.expression)
    text = format_expression(node)
    if args.check:
        again = parse_expression(text)
        if again != node:
            raise RuntimeError("canonical form failed to round-trip")
        print(f"ok: {text}")
    else:
        print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symplane", description="symmetric images from complex functions")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p_render = sub.add_parser("render", help="render a design file to a PNG")
    p_render.add_argument("spec", help="design JSON file")
    p_render.add_argument("-o", "--output", required=True, help="output PNG path")
    p_render.add_argument("--workers", type=int, default=4, help="row-band threads (default 4)")
    p_render.set_defaults(handler=_cmd_render)

    p_animate = sub.add_parser("animate", help="render an animation frame sequence")
    p_animate.add_argument("spec", help="design JSON file with an animation block")
    p_animate.add_argument("-o", "--output", required=True, help="output directory")
    p_animate.add_argument("--workers", type=int, default=4, help="row-band threads per frame")
    p_animate.add_argument("--frame-workers", type=int, default=1, help="frames rendered in parallel")
    p_animate.set_defaults(handler=_cmd_animate)

    p_verify = sub.add_parser("verify", help="run the built-in verification suite")
    p_verify.add_argument("--suite", choices=("euclid", "hyperbolic", "all"), default="all")
    p_verify.set_defaults(handler=_cmd_verify)

    p_tree = sub.add_parser("tree", help="dump a coprime-pair tree with Bezout pairs")
    p_tree.add_argument("--root", required=True, help="tree root: 2,1 or 3,1")
    p_tree.add_argument("--depth", type=int, required=True, help="levels below the root")
    p_tree.set_defaults(handler=_cmd_tree)

    p_reduce = sub.add_parser("reduce", help="reduce a point to the fundamental domain")
    p_reduce.add_argument("--point", required=True, help="point as x,y with y > 0")
    p_reduce.set_defaults(handler=_cmd_reduce)

    p_parse = sub.add_parser("parse", help="parse an expression and print its canonical form")
    p_parse.add_argument("expression", help="expression text, e.g. 'z^6 + 1/z^6'")
    p_parse.add_argument("--check", action="store_true", help="also round-trip the canonical form")
    p_parse.set_defaults(handler=_cmd_parse)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (DesignSpecError, ExprError) as exc:
        print(f"symplane: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"symplane: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, RuntimeError) as exc:
        print(f"symplane: runtime fault: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
