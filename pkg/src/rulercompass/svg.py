"""Deterministic SVG 1.1 rendering of a scene.

All layout arithmetic is done on rationals (interval midpoints) and printed
with a fixed number of digits, so output is byte-identical across runs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape, quoteattr

from .euclidplane import Circle, Line, Point
from .exactfield import decimal_digits, format_rational, to_decimal
from .geoscript import Scene

__all__ = ["RenderOptions", "render_svg"]


@dataclass(frozen=True)
class RenderOptions:
    width_px: int = 640
    margin_fraction: Fraction = Fraction(1, 20)
    precision_bits: int = 24
    label_points: bool = True
    highlight_edges: Sequence[tuple[str, str]] = ()

    def __post_init__(self):
        if self.width_px < 64:
            raise ValueError("width_px must be at least 64")
        if not 0 <= Fraction(self.margin_fraction) < Fraction(1, 2):
            raise ValueError("margin_fraction must lie in [0, 1/2)")
        if self.precision_bits < 16:
            raise ValueError("precision_bits must be at least 16")


def _sqrt_rational(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.isqrt((x.numerator * scale * scale) // x.denominator), scale)


def _clip(p, d, w, h):
    """Liang-Barsky clip of the infinite line p + t d to [0, w] x [0, h]."""
    lo, hi = None, None
    for pk, dk, top in ((p[0], d[0], w), (p[1], d[1], h)):
        if dk == 0:
            if not 0 <= pk <= top:
                return None
            continue
        t0, t1 = (0 - pk) / dk, (top - pk) / dk
        if t0 > t1:
            t0, t1 = t1, t0
        lo = t0 if lo is None else max(lo, t0)
        hi = t1 if hi is None else min(hi, t1)
    if lo is None or lo >= hi:
        return None
    return (p[0] + lo * d[0], p[1] + lo * d[1]), (p[0] + hi * d[0], p[1] + hi * d[1])


def render_svg(scene: Scene, options: RenderOptions = RenderOptions()) -> str:
    if not scene.objects:
        raise ValueError("cannot render an empty scene")
    bits = options.precision_bits
    digits = decimal_digits(bits)

    def mid(v):
        return to_decimal(v, bits).midpoint

    def xy(pt: Point):
        return mid(pt.x), mid(pt.y)

    points = {n: xy(o) for n, o in scene.objects.items() if isinstance(o, Point)}
    circles = {n: (xy(o.center), _sqrt_rational(mid(o.radius_sq), bits))
               for n, o in scene.objects.items() if isinstance(o, Circle)}
    lines = {n: (xy(o.p), xy(o.q)) for n, o in scene.objects.items() if isinstance(o, Line)}

    xs = [x for x, _ in points.values()]
    ys = [y for _, y in points.values()]
    for (cx, cy), r in circles.values():
        xs += [cx - r, cx + r]
        ys += [cy - r, cy + r]
    for p, q in lines.values():
        xs += [p[0], q[0]]
        ys += [p[1], q[1]]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    if xmax == xmin:
        pad = max(ymax - ymin, Fraction(2)) / 2
        xmin, xmax = xmin - pad, xmax + pad
    if ymax == ymin:
        pad = max(xmax - xmin, Fraction(2)) / 2
        ymin, ymax = ymin - pad, ymax + pad

    width = Fraction(options.width_px)
    margin = Fraction(options.margin_fraction) * width
    scale = (width - 2 * margin) / (xmax - xmin)
    height = (ymax - ymin) * scale + 2 * margin

    def sx(x):
        return margin + (x - xmin) * scale

    def sy(y):  # screen y grows downward
        return margin + (ymax - y) * scale

    def num(v):
        return format_rational(v, digits)

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{options.width_px}" height="{num(height)}" '
        f'viewBox="0 0 {options.width_px} {num(height)}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    if circles:
        out.append('<g id="circles" fill="none" stroke="#4a6fa5" stroke-width="1">')
        for name, ((cx, cy), r) in circles.items():
            out.append(f'<circle id={quoteattr("circle-" + name)} cx="{num(sx(cx))}" '
                       f'cy="{num(sy(cy))}" r="{num(r * scale)}"/>')
        out.append("</g>")
    if lines:
        out.append('<g id="lines" stroke="#888888" stroke-width="1">')
        for name, (p, q) in lines.items():
            sp = (sx(p[0]), sy(p[1]))
            d = ((q[0] - p[0]) * scale, (p[1] - q[1]) * scale)
            seg = _clip(sp, d, width, height)
            if seg is None:
                continue
            (x1, y1), (x2, y2) = seg
            out.append(f'<line id={quoteattr("line-" + name)} x1="{num(x1)}" y1="{num(y1)}" '
                       f'x2="{num(x2)}" y2="{num(y2)}"/>')
        out.append("</g>")
    if options.highlight_edges:
        out.append('<g id="edges" stroke="#c0392b" stroke-width="3" stroke-linecap="round">')
        for a, b in options.highlight_edges:
            if a not in points or b not in points:
                raise KeyError(f"highlight edge {a}{b} names an unknown point")
            (x1, y1), (x2, y2) = points[a], points[b]
            out.append(f'<line id={quoteattr(f"edge-{a}{b}")} x1="{num(sx(x1))}" '
                       f'y1="{num(sy(y1))}" x2="{num(sx(x2))}" y2="{num(sy(y2))}"/>')
        out.append("</g>")
    out.append('<g id="points" fill="black" font-family="sans-serif" font-size="14">')
    for name, (x, y) in points.items():
        out.append(f'<circle id={quoteattr("point-" + name)} cx="{num(sx(x))}" '
                   f'cy="{num(sy(y))}" r="3"/>')
        if options.label_points:
            out.append(f'<text x="{num(sx(x) + 5)}" y="{num(sy(y) - 5)}">{escape(name)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
