"""Command-line front end.

Exit codes: 0 success / verification passed, 1 verification or construction
failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .euclidplane import dist_sq
from .exactangle import constructible_factorization
from .exactfield import format_decimal
from .geoscript import (
    ConstructionError, GeoSyntaxError, ScriptAssertionError, ScriptError,
    StaticCheckError, format_scene, interpret, parse,
)
from .polyverify import (
    TABLE_1, build_paper_scene, compare_op_counts, identify_ngon, verify_table,
)
from .svg import RenderOptions, render_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _fmt_deg(q: Fraction) -> str:
    return f"{q.numerator}°" if q.denominator == 1 else f"{q.numerator}/{q.denominator}°"


def _load_scene(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from exc
    try:
        ast = parse(source)
    except (GeoSyntaxError, StaticCheckError) as exc:
        raise _Usage(f"{path}:{exc}") from exc
    return interpret(ast)


def cmd_run(args, out) -> int:
    scene = _load_scene(args.file)
    out.write(format_scene(scene, args.precision))
    return EXIT_OK


def cmd_verify_paper(args, out) -> int:
    scene = build_paper_scene(args.scale)
    report = verify_table(scene)
    out.write(f"Regular polygon edges inscribed in X (center O, radius OA), A = ({args.scale}, 0)\n")
    for r in report.results:
        c = r.claim
        status = "PASS" if r.passed else "FAIL"
        yes = {True: "yes", False: "no"}
        line = (f"{status}  {c.n:>2}-gon  {c.label:<2}  {_fmt_deg(c.central_angle_degrees):>4}  "
                f"{c.p_name} on X: {yes[r.on_circle_p]:<3}  {c.q_name} on X: {yes[r.on_circle_q]:<3}  "
                f"chord exact: {yes[r.chord_exact_match]}")
        if r.reconstructed:
            line += "  (reconstructed step)"
        out.write(line + "\n")
    verdict = "PASS" if report.overall else "FAIL"
    out.write(f"overall: {verdict} ({report.passed_count}/{len(report.results)})\n")
    return EXIT_OK if report.overall else EXIT_FAIL


def cmd_table(args, out) -> int:
    scene = build_paper_scene()
    r2 = dist_sq(scene.point("O"), scene.point("A"))
    out.write("n | edge | angle | chord (exact) | chord (decimal) | identified n\n")
    for c in TABLE_1:
        chord2 = dist_sq(scene.point(c.p_name), scene.point(c.q_name))
        chord = chord2.sqrt()
        found = identify_ngon(chord2, r2, args.n_max)
        out.write(f"{c.n} | {c.label} | {_fmt_deg(c.central_angle_degrees)} | {chord} | "
                  f"{format_decimal(chord, args.precision)} | {found if found else '-'}\n")
    return EXIT_OK


def _parse_edge(text: str) -> tuple[str, str]:
    parts = text.replace(",", "-").split("-")
    if len(parts) != 2 or not all(parts):
        raise _Usage(f"bad highlight edge {text!r}; expected P-Q")
    return parts[0], parts[1]


def cmd_svg(args, out) -> int:
    if args.paper == bool(args.file):
        raise _Usage("svg needs exactly one of FILE or --paper")
    if args.paper:
        scene = build_paper_scene()
        default_edges = [(c.p_name, c.q_name) for c in TABLE_1]
    else:
        scene = _load_scene(args.file)
        default_edges = []
    edges = [_parse_edge(e) for e in args.highlight] if args.highlight else default_edges
    try:
        options = RenderOptions(width_px=args.width, precision_bits=max(args.precision, 16),
                                highlight_edges=tuple(edges))
        doc = render_svg(scene, options)
    except (ValueError, KeyError) as exc:
        raise _Usage(str(exc)) from exc
    if args.output == "-":
        out.write(doc)
    else:
        try:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(doc)
        except OSError as exc:
            raise _Usage(f"cannot write {args.output}: {exc.strerror}") from exc
        out.write(f"wrote {args.output}\n")
    return EXIT_OK


def _count_row(label, c) -> str:
    return f"{label:<44} | {c.circles_drawn:>7} | {c.lines_drawn:>5} | {c.points_marked:>6}\n"


def cmd_opcount(args, out) -> int:
    cmp = compare_op_counts()
    out.write(f"{'construction':<44} | circles | lines | points\n")
    out.write(_count_row("paper scene (full)", cmp.paper_full))
    out.write(_count_row("paper scene through I (shared prefix)", cmp.paper_shared_prefix))
    out.write(_count_row("paper route to pentadecagon edge EN", cmp.paper_pentadecagon_route))
    out.write(_count_row("euclid variant (full)", cmp.variant_full))
    out.write(_count_row("euclid route to pentadecagon edge RS (S = I)",
                         cmp.variant_pentadecagon_route))
    out.write(_count_row("euclid route minus shared prefix", cmp.variant_minus_prefix))
    out.write(_count_row("euclid route minus paper route", cmp.variant_minus_paper_route))
    out.write("assumptions: S is taken to be I (R at 30°, I at 54°); K is a reconstructed step;\n"
              "drawn circles and lines cost 1, marked points are free.\n")
    return EXIT_OK


def _factor_text(n: int) -> str:
    parts = []
    p, m = 2, n
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            parts.append(f"{p}^{e}" if e > 1 else str(p))
        p += 1
    if m > 1:
        parts.append(str(m))
    return "·".join(parts)


def cmd_check_ngon(args, out) -> int:
    if args.n < 3:
        raise _Usage("check-ngon needs n >= 3")
    verdict = constructible_factorization(args.n)
    if verdict is None:
        out.write(f"not constructible: {_factor_text(args.n)}\n")
    else:
        out.write(f"constructible: {_factor_text(args.n)}\n")
    return EXIT_OK


def _scale(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("scale must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS,
                        help="bits of precision for decimal output (default 60)")
    common.add_argument("--n-max", type=int, default=argparse.SUPPRESS,
                        help="largest n tried when identifying polygons (default 64)")

    parser = argparse.ArgumentParser(prog="rulercompass", parents=[common],
                                     description="Exact ruler-and-compass constructions.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("run", parents=[common], help="interpret a .geo script")
    p.add_argument("file")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify-paper", parents=[common],
                       help="verify every edge of the polygon table exactly")
    p.add_argument("--scale", type=_scale, default=Fraction(1),
                   help="place A at (scale, 0)")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("table", parents=[common], help="print the edge table with exact chords")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("svg", parents=[common], help="render a scene to SVG")
    p.add_argument("file", nargs="?")
    p.add_argument("--paper", action="store_true", help="render the built-in paper scene")
    p.add_argument("-o", "--output", required=True, help="output path, or - for stdout")
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--highlight", action="append", metavar="P-Q",
                   help="emphasise segment PQ (repeatable)")
    p.set_defaults(func=cmd_svg)

    p = sub.add_parser("opcount", parents=[common],
                       help="compare construction costs of the two built-in scenes")
    p.set_defaults(func=cmd_opcount)

    p = sub.add_parser("check-ngon", parents=[common], help="is the regular n-gon constructible?")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_check_ngon)
    return parser


def run_cli(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    args.precision = getattr(args, "precision", 60)
    args.n_max = getattr(args, "n_max", 64)
    if args.precision < 1 or args.n_max < 3:
        err.write("--precision must be positive and --n-max at least 3\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except _Usage as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ConstructionError, ScriptAssertionError) as exc:
        err.write(f"construction failed: {exc}\n")
        return EXIT_FAIL
    except ScriptError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())
