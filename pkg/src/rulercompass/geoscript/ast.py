"""Syntax tree for ``.geo`` construction scripts.

Source positions are carried on every statement but excluded from equality,
so ``parse(format_source(ast)) == ast`` holds structurally.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union


@dataclass(frozen=True)
class Pos:
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


NOPOS = Pos(0, 0)


# -- radical expressions (assertion right-hand sides) ----------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sqrt:
    operand: "Expr"


Expr = Union[Num, Neg, BinOp, Sqrt]


# -- selectors and predicates --------------------------------------------

SELECTOR_KINDS = ("index", "nearest", "farthest", "left_of", "right_of")


@dataclass(frozen=True)
class Selector:
    kind: str
    args: tuple  # (int,) for index, (name,) or (name, name) otherwise

    def __post_init__(self):
        if self.kind not in SELECTOR_KINDS:
            raise ValueError(f"unknown selector kind {self.kind!r}")


@dataclass(frozen=True)
class Dist2Eq:
    p: str
    q: str
    value: Expr


@dataclass(frozen=True)
class On:
    point: str
    curve: str


@dataclass(frozen=True)
class Collinear:
    p: str
    q: str
    r: str


Predicate = Union[Dist2Eq, On, Collinear]


# -- statements -----------------------------------------------------------

@dataclass(frozen=True)
class FreePoint:
    name: str
    x: Fraction
    y: Fraction
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class LineStmt:
    name: str
    p: str
    q: str
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class CircleThrough:
    name: str
    center: str
    through: str
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class CircleRadius:
    name: str
    center: str
    p: str
    q: str
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class Intersect:
    name: str
    a: str
    b: str
    selector: Selector
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class Assert:
    predicate: Predicate
    pos: Pos = field(default=NOPOS, compare=False)


Statement = Union[FreePoint, LineStmt, CircleThrough, CircleRadius, Intersect, Assert]


@dataclass(frozen=True)
class ScriptAst:
    statements: tuple


def statement_uses(stmt: Statement) -> tuple[str, ...]:
    """Names a statement reads, in source order."""
    if isinstance(stmt, FreePoint):
        return ()
    if isinstance(stmt, LineStmt):
        return (stmt.p, stmt.q)
    if isinstance(stmt, CircleThrough):
        return (stmt.center, stmt.through)
    if isinstance(stmt, CircleRadius):
        return (stmt.center, stmt.p, stmt.q)
    if isinstance(stmt, Intersect):
        sel = stmt.selector.args if stmt.selector.kind != "index" else ()
        return (stmt.a, stmt.b) + tuple(sel)
    pred = stmt.predicate
    if isinstance(pred, Dist2Eq):
        return (pred.p, pred.q)
    if isinstance(pred, On):
        return (pred.point, pred.curve)
    return (pred.p, pred.q, pred.r)


def statement_defines(stmt: Statement):
    return None if isinstance(stmt, Assert) else stmt.name


# -- canonical source -------------------------------------------------------

def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_expr(e: Expr, top: bool = True) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Neg):
        return "-" + format_expr(e.operand, top=False)
    if isinstance(e, Sqrt):
        return f"sqrt({format_expr(e.operand)})"
    body = f"{format_expr(e.left, top=False)} {e.op} {format_expr(e.right, top=False)}"
    return body if top else f"({body})"


def format_selector(sel: Selector) -> str:
    if sel.kind == "index":
        return f"[{sel.args[0]}]"
    word = {"left_of": "leftof", "right_of": "rightof"}.get(sel.kind, sel.kind)
    return " ".join((word,) + tuple(sel.args))


def format_statement(stmt: Statement) -> str:
    if isinstance(stmt, FreePoint):
        return f"point {stmt.name} = ({_rat(stmt.x)}, {_rat(stmt.y)})"
    if isinstance(stmt, LineStmt):
        return f"line {stmt.name} = line({stmt.p}, {stmt.q})"
    if isinstance(stmt, CircleThrough):
        return f"circle {stmt.name} = through({stmt.center}, {stmt.through})"
    if isinstance(stmt, CircleRadius):
        return f"circle {stmt.name} = radius({stmt.center}; {stmt.p}, {stmt.q})"
    if isinstance(stmt, Intersect):
        return (f"point {stmt.name} = intersect({stmt.a}, {stmt.b}) "
                f"{format_selector(stmt.selector)}")
    pred = stmt.predicate
    if isinstance(pred, Dist2Eq):
        return f"assert dist2({pred.p}, {pred.q}) == {format_expr(pred.value)}"
    if isinstance(pred, On):
        return f"assert on({pred.point}, {pred.curve})"
    return f"assert collinear({pred.p}, {pred.q}, {pred.r})"


def format_source(ast: ScriptAst) -> str:
    return "".join(format_statement(s) + "\n" for s in ast.statements)
