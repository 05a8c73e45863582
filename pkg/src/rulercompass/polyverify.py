"""Built-in scenes, exact verification of the regular-polygon edge table,
inverse chord lookup and construction-cost tallies."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources
from typing import Iterable, Optional

from .euclidplane import dist_sq
from .exactangle import chord_sq, is_constructible, supported_ngon
from .exactfield import ConstructibleNumber, to_decimal
from .geoscript import Scene, interpret, parse
from .geoscript.ast import (
    Assert, BinOp, Dist2Eq, FreePoint, Num, ScriptAst, statement_uses,
)

__all__ = [
    "EUCLID_VARIANT_FILE",
    "EdgeClaim",
    "EdgeResult",
    "OpComparison",
    "OpCount",
    "PAPER_SCENE_FILE",
    "RECONSTRUCTED_CLAIMS",
    "TABLE_1",
    "VerificationReport",
    "build_euclid_variant",
    "build_paper_scene",
    "compare_op_counts",
    "dependency_steps",
    "identify_ngon",
    "load_script",
    "op_count",
    "prefix_steps",
    "scale_script",
    "verify_edge",
    "verify_table",
]

PAPER_SCENE_FILE = "paper_pentadecagon.geo"
EUCLID_VARIANT_FILE = "euclid_variant.geo"


@dataclass(frozen=True)
class EdgeClaim:
    n: int
    p_name: str
    q_name: str

    @property
    def central_angle_degrees(self) -> Fraction:
        return Fraction(360, self.n)

    @property
    def label(self) -> str:
        return self.p_name + self.q_name


TABLE_1 = (
    EdgeClaim(3, "E", "F"),
    EdgeClaim(4, "H", "A"),
    EdgeClaim(5, "H", "K"),
    EdgeClaim(6, "E", "A"),
    EdgeClaim(10, "H", "I"),
    EdgeClaim(12, "H", "E"),
    EdgeClaim(15, "E", "N"),
    EdgeClaim(20, "I", "N"),
    EdgeClaim(30, "L", "N"),
    EdgeClaim(60, "E", "I"),
)

# K (angle HOI doubled) has no explicit compass step in the source
# construction; the circle centred I through H supplies it.
RECONSTRUCTED_CLAIMS = frozenset({EdgeClaim(5, "H", "K")})


@dataclass(frozen=True)
class EdgeResult:
    claim: EdgeClaim
    on_circle_p: bool
    on_circle_q: bool
    chord_exact_match: bool

    @property
    def passed(self) -> bool:
        return self.on_circle_p and self.on_circle_q and self.chord_exact_match

    @property
    def reconstructed(self) -> bool:
        return self.claim in RECONSTRUCTED_CLAIMS


@dataclass(frozen=True)
class VerificationReport:
    results: tuple

    @property
    def overall(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def passed_count(self) -> int:
        return sum(r.passed for r in self.results)


@dataclass(frozen=True)
class OpCount:
    circles_drawn: int = 0
    lines_drawn: int = 0
    points_marked: int = 0

    def __sub__(self, other: "OpCount") -> "OpCount":
        return OpCount(self.circles_drawn - other.circles_drawn,
                       self.lines_drawn - other.lines_drawn,
                       self.points_marked - other.points_marked)


# -- scenes ----------------------------------------------------------------

def load_script(filename: str) -> str:
    return resources.files("rulercompass.scenes").joinpath(filename).read_text(encoding="utf-8")


def scale_script(ast: ScriptAst, factor) -> ScriptAst:
    """Apply the similarity ``(x, y) -> factor*(x, y)`` to free points and distance assertions."""
    factor = Fraction(factor)
    sq = factor * factor
    out = []
    for stmt in ast.statements:
        if isinstance(stmt, FreePoint):
            stmt = replace(stmt, x=stmt.x * factor, y=stmt.y * factor)
        elif isinstance(stmt, Assert) and isinstance(stmt.predicate, Dist2Eq) and sq != 1:
            scaled = BinOp("*", BinOp("/", Num(sq.numerator), Num(sq.denominator)),
                           stmt.predicate.value)
            stmt = replace(stmt, predicate=replace(stmt.predicate, value=scaled))
        out.append(stmt)
    return ScriptAst(tuple(out))


def _build(filename: str, scale) -> Scene:
    ast = parse(load_script(filename))
    if scale != 1:
        ast = scale_script(ast, scale)
    return interpret(ast)


def build_paper_scene(scale=1) -> Scene:
    """Interpret the bundled pentadecagon construction (O at the origin, A at (scale, 0))."""
    return _build(PAPER_SCENE_FILE, scale)


def build_euclid_variant(scale=1) -> Scene:
    return _build(EUCLID_VARIANT_FILE, scale)


# -- verification ---------------------------------------------------------

def verify_edge(scene: Scene, claim: EdgeClaim, center_name: str = "O",
                radius_point_name: str = "A") -> EdgeResult:
    center = scene.point(center_name)
    p, q = scene.point(claim.p_name), scene.point(claim.q_name)
    r2 = dist_sq(center, scene.point(radius_point_name))
    return EdgeResult(
        claim,
        on_circle_p=dist_sq(center, p) == r2,
        on_circle_q=dist_sq(center, q) == r2,
        chord_exact_match=dist_sq(p, q) == chord_sq(claim.n, r2),
    )


def verify_table(scene: Scene, claims: Iterable[EdgeClaim] = TABLE_1,
                 center_name: str = "O", radius_point_name: str = "A") -> VerificationReport:
    return VerificationReport(tuple(
        verify_edge(scene, c, center_name, radius_point_name) for c in claims))


def identify_ngon(chord_squared: ConstructibleNumber, radius_sq: ConstructibleNumber,
                  n_max: int = 64) -> Optional[int]:
    """The n <= n_max whose inscribed edge has squared length ``chord_squared``, if any.

    Candidates are shortlisted numerically; the answer is confirmed exactly.
    """
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    if radius_sq.sign() <= 0:
        raise ValueError("radius_sq must be positive")
    ratio = to_decimal(chord_squared, 80).midpoint / to_decimal(radius_sq, 80).midpoint
    for n in range(3, n_max + 1):
        if not (is_constructible(n) and supported_ngon(n)):
            continue
        if abs(float(ratio) - 4 * math.sin(math.pi / n) ** 2) > 1e-9:
            continue
        if chord_sq(n, radius_sq) == chord_squared:
            return n
    return None


# -- construction cost ----------------------------------------------------

_COUNTED = {"circle": "circles_drawn", "line": "lines_drawn",
            "point": "points_marked", "intersection": "points_marked"}


def op_count(scene_or_steps) -> OpCount:
    """Drawn circles, drawn lines and marked points in a scene (or a list of its steps)."""
    steps = scene_or_steps.steps if isinstance(scene_or_steps, Scene) else scene_or_steps
    tally = {"circles_drawn": 0, "lines_drawn": 0, "points_marked": 0}
    for step in steps:
        if step.kind in _COUNTED:
            tally[_COUNTED[step.kind]] += 1
    return OpCount(**tally)


def prefix_steps(scene: Scene, through: str) -> list:
    """Steps up to and including the one that defines ``through`` (assertions dropped)."""
    out = []
    for step in scene.steps:
        if step.kind != "assert":
            out.append(step)
        if step.name == through:
            return out
    raise KeyError(through)


def dependency_steps(scene: Scene, targets: Iterable[str]) -> list:
    """Minimal sub-log of steps that the named objects depend on, in log order."""
    by_name = {s.name: s for s in scene.steps if s.name is not None}
    needed, stack = set(), list(targets)
    while stack:
        name = stack.pop()
        if name in needed:
            continue
        if name not in by_name:
            raise KeyError(name)
        needed.add(name)
        stack.extend(statement_uses(by_name[name].statement))
    return [s for s in scene.steps if s.name in needed]


@dataclass(frozen=True)
class OpComparison:
    paper_full: OpCount
    paper_shared_prefix: OpCount   # paper scene through I, where the two routes part
    paper_pentadecagon_route: OpCount   # steps needed for edge EN
    variant_full: OpCount
    variant_pentadecagon_route: OpCount   # steps needed for edge RI (S taken as I)

    @property
    def variant_minus_prefix(self) -> OpCount:
        return self.variant_pentadecagon_route - self.paper_shared_prefix

    @property
    def variant_minus_paper_route(self) -> OpCount:
        return self.variant_pentadecagon_route - self.paper_pentadecagon_route


def compare_op_counts(paper: Optional[Scene] = None,
                      variant: Optional[Scene] = None) -> OpComparison:
    paper = paper if paper is not None else build_paper_scene()
    variant = variant if variant is not None else build_euclid_variant()
    return OpComparison(
        paper_full=op_count(paper),
        paper_shared_prefix=op_count(prefix_steps(paper, "I")),
        paper_pentadecagon_route=op_count(dependency_steps(paper, ("E", "N"))),
        variant_full=op_count(variant),
        variant_pentadecagon_route=op_count(dependency_steps(variant, ("R", "I"))),
    )
