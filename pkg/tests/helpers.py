"""Shared oracles and generators for the test-suite."""
from __future__ import annotations

import random
from fractions import Fraction

import mpmath

from rulercompass.exactfield import ConstructibleNumber, TowerContext


def mp_value(x: ConstructibleNumber, dps: int = 60) -> mpmath.mpf:
    """Evaluate a tower element with mpmath, independently of the interval code."""
    ctx = x.context
    with mpmath.workdps(dps):
        gens = []
        for radicand in ctx.generators:
            gens.append(mpmath.sqrt(_mp_coeffs(radicand.coefficients, gens)))
        return _mp_coeffs(x.coefficients, gens)


def _mp_coeffs(coeffs, gens):
    total = mpmath.mpf(0)
    for mask, c in enumerate(coeffs):
        if not c:
            continue
        term = mpmath.mpf(c.numerator) / c.denominator
        for i, g in enumerate(gens):
            if mask >> i & 1:
                term *= g
        total += term
    return total


def base_context() -> TowerContext:
    """Depth-3 tower Q(√2, √3, √(5 + √2))."""
    ctx = TowerContext()
    r2 = ctx.rational(2).sqrt()
    ctx.rational(3).sqrt()
    (5 + r2).sqrt()
    assert ctx.depth == 3
    return ctx


def random_rational(rng: random.Random, span: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_element(rng: random.Random, ctx: TowerContext, density: float = 0.5) -> ConstructibleNumber:
    n = 1 << ctx.depth
    coeffs = [random_rational(rng) if rng.random() < density else Fraction(0) for _ in range(n)]
    return ConstructibleNumber(ctx, coeffs)


def mp_fraction(x: ConstructibleNumber, dps: int = 60) -> Fraction:
    """Exact rational equal to the mpmath evaluation of ``x``."""
    v = mp_value(x, dps)
    sign_, man, exp, _ = v._mpf_
    q = Fraction(man) * (Fraction(2) ** exp)
    return -q if sign_ else q


def random_scene_incidences(rng: random.Random):
    """Build a small random ruler-and-compass scene.

    Returns ``(point, curves)`` pairs: each intersection point with the
    curves that produced it.
    """
    from rulercompass.euclidplane import (
        DegenerateConstructionError, Point, circle_center_radius_from,
        circle_center_through, intersect, line_through,
    )

    ctx = TowerContext()
    pts = []
    while len(pts) < 4:
        p = Point.of(ctx, random_rational(rng, 3, 2), random_rational(rng, 3, 2))
        if p not in pts:
            pts.append(p)
    curves = [
        line_through(pts[0], pts[1]),
        line_through(pts[2], pts[3]),
        circle_center_through(pts[0], pts[2]),
        circle_center_radius_from(pts[1], pts[2], pts[3]),
    ]
    found = []
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            try:
                for p in intersect(curves[i], curves[j]):
                    found.append((p, (curves[i], curves[j])))
            except DegenerateConstructionError:
                pass
    # one second-generation step built on a constructed point
    if found:
        seed = found[rng.randrange(len(found))][0]
        center = pts[3] if seed != pts[3] else pts[0]
        c = circle_center_through(center, seed)
        other = curves[rng.randrange(len(curves))]
        try:
            for p in intersect(c, other):
                found.append((p, (c, other)))
        except DegenerateConstructionError:
            pass
    return found
