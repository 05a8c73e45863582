"""Ruler and compass over constructible coordinates.

Every intersection is solved exactly.  When two points come out of an
operation they are ordered deterministically:

* line/circle: ascending parameter along the line's ``p -> q`` direction;
* circle/circle: along the radical line, directed as the ``+90`` degree
  rotation of the ``a.center -> b.center`` vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .exactfield import ConstructibleNumber, Rational, TowerContext

__all__ = [
    "Circle",
    "CoincidentLinesError",
    "DegenerateConstructionError",
    "Line",
    "Point",
    "circle_center_radius_from",
    "circle_center_through",
    "dist_sq",
    "intersect",
    "intersect_circles",
    "intersect_line_circle",
    "intersect_lines",
    "line_through",
    "on_circle",
    "on_line",
    "orientation",
]


class DegenerateConstructionError(ValueError):
    """A ruler or compass step was given coincident defining points."""


class CoincidentLinesError(DegenerateConstructionError):
    """Two lines (or circles) coincide, so their intersection is not a finite set."""


@dataclass(frozen=True)
class Point:
    x: ConstructibleNumber
    y: ConstructibleNumber

    @classmethod
    def of(cls, ctx: TowerContext, x: Rational, y: Rational) -> "Point":
        return cls(ctx.rational(x), ctx.rational(y))

    @property
    def context(self) -> TowerContext:
        return self.x.context

    def __sub__(self, other: "Point") -> tuple[ConstructibleNumber, ConstructibleNumber]:
        return self.x - other.x, self.y - other.y

    def __str__(self):
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class Line:
    """Line through ``p`` and ``q``, oriented ``p -> q``."""

    p: Point
    q: Point

    def __post_init__(self):
        if self.p == self.q:
            raise DegenerateConstructionError("a line needs two distinct points")

    @property
    def direction(self) -> tuple[ConstructibleNumber, ConstructibleNumber]:
        return self.q - self.p


@dataclass(frozen=True)
class Circle:
    center: Point
    radius_sq: ConstructibleNumber

    def __post_init__(self):
        if self.radius_sq.sign() <= 0:
            raise DegenerateConstructionError("a circle needs a positive radius")


Curve = Union[Line, Circle]


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def dist_sq(p: Point, q: Point) -> ConstructibleNumber:
    dx, dy = p - q
    return dx * dx + dy * dy


def orientation(p: Point, q: Point, r: Point) -> int:
    """+1 if ``r`` lies left of the directed line ``p -> q``, -1 if right, 0 if collinear."""
    ux, uy = q - p
    vx, vy = r - p
    return _cross(ux, uy, vx, vy).sign()


def line_through(p: Point, q: Point) -> Line:
    return Line(p, q)


def circle_center_through(center: Point, through: Point) -> Circle:
    if center == through:
        raise DegenerateConstructionError("circle through its own center has zero radius")
    return Circle(center, dist_sq(center, through))


def circle_center_radius_from(center: Point, p: Point, q: Point) -> Circle:
    """Rigid compass: radius |pq| transferred to ``center``."""
    if p == q:
        raise DegenerateConstructionError("compass opening between coincident points")
    return Circle(center, dist_sq(p, q))


def on_line(pt: Point, line: Line) -> bool:
    return orientation(line.p, line.q, pt) == 0


def on_circle(pt: Point, circle: Circle) -> bool:
    return dist_sq(pt, circle.center) == circle.radius_sq


def intersect_lines(a: Line, b: Line) -> Optional[Point]:
    dax, day = a.direction
    dbx, dby = b.direction
    det = _cross(dax, day, dbx, dby)
    wx, wy = b.p - a.p
    if not det:
        if not _cross(dax, day, wx, wy):
            raise CoincidentLinesError("lines coincide")
        return None
    t = _cross(wx, wy, dbx, dby) / det
    return Point(a.p.x + t * dax, a.p.y + t * day)


def intersect_line_circle(line: Line, circle: Circle) -> list[Point]:
    dx, dy = line.direction
    wx, wy = line.p - circle.center
    # |w + t d|^2 = r^2  ->  A t^2 + 2 B t + C = 0
    A = dx * dx + dy * dy
    B = wx * dx + wy * dy
    C = wx * wx + wy * wy - circle.radius_sq
    disc = B * B - A * C
    s = disc.sign()
    if s < 0:
        return []
    p = line.p
    if s == 0:
        t = -B / A
        return [Point(p.x + t * dx, p.y + t * dy)]
    root = disc.sqrt()
    out = []
    for t in ((-B - root) / A, (-B + root) / A):
        out.append(Point(p.x + t * dx, p.y + t * dy))
    return out


def intersect_circles(a: Circle, b: Circle) -> list[Point]:
    dx, dy = b.center - a.center
    dd = dx * dx + dy * dy
    if not dd:
        if a.radius_sq == b.radius_sq:
            raise CoincidentLinesError("identical circles")
        return []
    # foot of the radical line on the line of centers
    t = (dd + a.radius_sq - b.radius_sq) / (2 * dd)
    foot = Point(a.center.x + t * dx, a.center.y + t * dy)
    radical = Line(foot, Point(foot.x - dy, foot.y + dx))
    return intersect_line_circle(radical, a)


def intersect(a: Curve, b: Curve) -> list[Point]:
    """Dispatch on the curve types; always returns a list."""
    if isinstance(a, Line) and isinstance(b, Line):
        pt = intersect_lines(a, b)
        return [] if pt is None else [pt]
    if isinstance(a, Line):
        return intersect_line_circle(a, b)
    if isinstance(b, Line):
        return intersect_line_circle(b, a)
    return intersect_circles(a, b)
