"""Execute a checked :class:`ScriptAst` against the exact plane."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..euclidplane import (
    Circle, DegenerateConstructionError, Line, Point, circle_center_radius_from,
    circle_center_through, dist_sq, intersect, line_through, on_circle, on_line,
    orientation,
)
from ..exactfield import ConstructibleNumber, NegativeRadicandError, TowerContext, format_decimal
from .ast import (
    Assert, BinOp, CircleRadius, CircleThrough, Collinear, Dist2Eq, Expr, FreePoint,
    Intersect, LineStmt, Neg, Num, On, ScriptAst, Selector, Sqrt, Statement,
    format_expr, format_statement,
)
from .errors import (
    ConstructionError, ScriptAssertionError, ScriptError, SelectorAmbiguityError,
)

GeoObject = Union[Point, Line, Circle]

STEP_KINDS = ("point", "line", "circle", "intersection", "assert")


class UnboundNameError(KeyError):
    pass


@dataclass(frozen=True)
class Step:
    kind: str
    name: Optional[str]
    statement: Statement


@dataclass
class Scene:
    context: TowerContext = field(default_factory=TowerContext)
    objects: dict = field(default_factory=dict)
    steps: list = field(default_factory=list)

    def __bool__(self):
        return bool(self.objects)

    def get(self, name: str) -> GeoObject:
        try:
            return self.objects[name]
        except KeyError:
            raise UnboundNameError(name) from None

    def point(self, name: str) -> Point:
        obj = self.get(name)
        if not isinstance(obj, Point):
            raise TypeError(f"{name!r} is not a point")
        return obj

    def points(self) -> dict[str, Point]:
        return {n: o for n, o in self.objects.items() if isinstance(o, Point)}

    def fingerprint(self) -> tuple:
        """Context-independent exact identity: generator radicands plus every object's coefficients."""
        def coeffs(v: ConstructibleNumber):
            return v.coefficients

        def obj(o):
            if isinstance(o, Point):
                return ("point", coeffs(o.x), coeffs(o.y))
            if isinstance(o, Line):
                return ("line", obj(o.p), obj(o.q))
            return ("circle", obj(o.center), coeffs(o.radius_sq))

        gens = tuple(coeffs(g) for g in self.context.generators)
        return gens, tuple((n, obj(o)) for n, o in self.objects.items())


def evaluate_expr(expr: Expr, ctx: TowerContext) -> ConstructibleNumber:
    if isinstance(expr, Num):
        return ctx.rational(expr.value)
    if isinstance(expr, Neg):
        return -evaluate_expr(expr.operand, ctx)
    if isinstance(expr, Sqrt):
        return evaluate_expr(expr.operand, ctx).sqrt()
    left = evaluate_expr(expr.left, ctx)
    right = evaluate_expr(expr.right, ctx)
    if expr.op == "+":
        return left + right
    if expr.op == "-":
        return left - right
    if expr.op == "*":
        return left * right
    return left / right


def select(candidates: list[Point], selector: Selector, scene: Scene) -> Point:
    """Pick one intersection point; never chooses silently between exact ties."""
    if not candidates:
        raise ConstructionError("intersection is empty")
    kind, args = selector.kind, selector.args
    if kind == "index":
        if args[0] >= len(candidates):
            raise ConstructionError(
                f"selector [{args[0]}] but the intersection has {len(candidates)} point(s)")
        return candidates[args[0]]
    if kind in ("nearest", "farthest"):
        ref = scene.point(args[0])
        if len(candidates) == 1:
            return candidates[0]
        a, b = candidates
        s = (dist_sq(a, ref) - dist_sq(b, ref)).sign()
        if s == 0:
            raise SelectorAmbiguityError(
                f"both intersection points are equidistant from {args[0]}")
        closer, further = (a, b) if s < 0 else (b, a)
        return closer if kind == "nearest" else further
    p, q = scene.point(args[0]), scene.point(args[1])
    want = 1 if kind == "left_of" else -1
    hits = [c for c in candidates if orientation(p, q, c) == want]
    side = "left" if want == 1 else "right"
    if not hits:
        raise ConstructionError(f"no intersection point lies {side} of {args[0]}{args[1]}")
    if len(hits) > 1:
        raise SelectorAmbiguityError(
            f"both intersection points lie {side} of {args[0]}{args[1]}")
    return hits[0]


def _execute(stmt: Statement, scene: Scene) -> None:
    ctx = scene.context
    if isinstance(stmt, FreePoint):
        scene.objects[stmt.name] = Point.of(ctx, stmt.x, stmt.y)
        scene.steps.append(Step("point", stmt.name, stmt))
    elif isinstance(stmt, LineStmt):
        scene.objects[stmt.name] = line_through(scene.point(stmt.p), scene.point(stmt.q))
        scene.steps.append(Step("line", stmt.name, stmt))
    elif isinstance(stmt, CircleThrough):
        scene.objects[stmt.name] = circle_center_through(
            scene.point(stmt.center), scene.point(stmt.through))
        scene.steps.append(Step("circle", stmt.name, stmt))
    elif isinstance(stmt, CircleRadius):
        scene.objects[stmt.name] = circle_center_radius_from(
            scene.point(stmt.center), scene.point(stmt.p), scene.point(stmt.q))
        scene.steps.append(Step("circle", stmt.name, stmt))
    elif isinstance(stmt, Intersect):
        found = intersect(scene.get(stmt.a), scene.get(stmt.b))
        scene.objects[stmt.name] = select(found, stmt.selector, scene)
        scene.steps.append(Step("intersection", stmt.name, stmt))
    else:
        _check_assertion(stmt, scene)
        scene.steps.append(Step("assert", None, stmt))


def _check_assertion(stmt: Assert, scene: Scene) -> None:
    pred = stmt.predicate
    if isinstance(pred, Dist2Eq):
        got = dist_sq(scene.point(pred.p), scene.point(pred.q))
        want = evaluate_expr(pred.value, scene.context)
        if got != want:
            raise ScriptAssertionError(
                f"dist2({pred.p}, {pred.q}) is {got}, not {format_expr(pred.value)}", stmt.pos)
    elif isinstance(pred, On):
        pt, curve = scene.point(pred.point), scene.get(pred.curve)
        ok = on_line(pt, curve) if isinstance(curve, Line) else on_circle(pt, curve)
        if not ok:
            raise ScriptAssertionError(f"{pred.point} does not lie on {pred.curve}", stmt.pos)
    elif isinstance(pred, Collinear):
        if orientation(*(scene.point(n) for n in (pred.p, pred.q, pred.r))) != 0:
            raise ScriptAssertionError(
                f"{pred.p}, {pred.q}, {pred.r} are not collinear", stmt.pos)


def interpret(ast: ScriptAst, context: Optional[TowerContext] = None) -> Scene:
    """Run every statement in order; errors carry the failing statement's position."""
    scene = Scene(context if context is not None else TowerContext())
    for stmt in ast.statements:
        try:
            _execute(stmt, scene)
        except ScriptError as exc:
            if exc.pos is None:
                exc.pos = stmt.pos
                exc.args = (f"{stmt.pos}: {exc.message}",)
            raise
        except (DegenerateConstructionError, NegativeRadicandError, ZeroDivisionError) as exc:
            raise ConstructionError(f"{format_statement(stmt)}: {exc}", stmt.pos) from exc
    return scene


def _object_lines(name: str, obj: GeoObject, bits: int) -> list[str]:
    def dec(v):
        return format_decimal(v, bits)

    if isinstance(obj, Point):
        return [f"{name} = ({obj.x}, {obj.y})",
                f"    ≈ ({dec(obj.x)}, {dec(obj.y)})"]
    if isinstance(obj, Line):
        return [f"{name} = line through ({obj.p.x}, {obj.p.y}) and ({obj.q.x}, {obj.q.y})",
                f"    ≈ ({dec(obj.p.x)}, {dec(obj.p.y)}) -> ({dec(obj.q.x)}, {dec(obj.q.y)})"]
    c = obj.center
    return [f"{name} = circle center ({c.x}, {c.y}), radius² {obj.radius_sq}",
            f"    ≈ center ({dec(c.x)}, {dec(c.y)}), radius² {dec(obj.radius_sq)}"]


def format_scene(scene: Scene, precision_bits: int = 60) -> str:
    """One exact line and one decimal line per named object."""
    lines = []
    for name, obj in scene.objects.items():
        lines.extend(_object_lines(name, obj, precision_bits))
    return "".join(line + "\n" for line in lines)
