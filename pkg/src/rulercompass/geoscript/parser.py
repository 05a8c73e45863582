"""Tokenizer, recursive-descent parser and static checker for ``.geo`` scripts."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple, Optional

from .ast import (
    Assert, BinOp, CircleRadius, CircleThrough, Collinear, Dist2Eq, Expr,
    FreePoint, Intersect, LineStmt, Neg, Num, On, Pos, ScriptAst, Selector,
    Sqrt, Statement,
)
from .errors import GeoSyntaxError, StaticCheckError

KEYWORDS = frozenset({
    "point", "line", "circle", "through", "radius", "intersect", "assert",
    "nearest", "farthest", "leftof", "rightof", "dist2", "on", "collinear", "sqrt",
})

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<op>==|[()\[\],;=+\-*/]|√)
""", re.VERBOSE)


class Token(NamedTuple):
    kind: str  # name, int, op, eof
    text: str
    pos: Pos


def tokenize(source: str) -> list[Token]:
    tokens = []
    line, line_start, i = 1, 0, 0
    while i < len(source):
        m = _TOKEN_RE.match(source, i)
        if m is None:
            raise GeoSyntaxError(f"unexpected character {source[i]!r}",
                                 Pos(line, i - line_start + 1))
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), Pos(line, i - line_start + 1)))
        text = m.group()
        nl = text.count("\n")
        if nl:
            line += nl
            line_start = i + text.rindex("\n") + 1
        i = m.end()
    tokens.append(Token("eof", "", Pos(line, i - line_start + 1)))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: str):
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise GeoSyntaxError(f"expected {expected}, found {found}", tok.pos)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("op", "name"):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind not in ("op", "name"):
            self.fail(repr(text))
        return self.advance()

    def name(self) -> str:
        tok = self.tok
        if tok.kind != "name" or tok.text in KEYWORDS:
            self.fail("an identifier")
        self.i += 1
        return tok.text

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail("an integer")
        return int(self.advance().text)

    def rational(self) -> Fraction:
        negative = False
        if self.tok.text in ("-", "+"):
            negative = self.advance().text == "-"
        num = self.integer()
        den = 1
        if self.accept("/"):
            pos = self.tok.pos
            den = self.integer()
            if den == 0:
                raise GeoSyntaxError("denominator must be positive", pos)
        value = Fraction(num, den)
        return -value if negative else value

    # -- statements ------------------------------------------------------

    def script(self) -> ScriptAst:
        stmts = []
        while self.tok.kind != "eof":
            stmts.append(self.statement())
        return ScriptAst(tuple(stmts))

    def statement(self) -> Statement:
        pos = self.tok.pos
        if self.accept("point"):
            name = self.name()
            self.expect("=")
            if self.accept("intersect"):
                self.expect("(")
                a = self.name()
                self.expect(",")
                b = self.name()
                self.expect(")")
                return Intersect(name, a, b, self.selector(), pos=pos)
            self.expect("(")
            x = self.rational()
            self.expect(",")
            y = self.rational()
            self.expect(")")
            return FreePoint(name, x, y, pos=pos)
        if self.accept("line"):
            name = self.name()
            self.expect("=")
            self.expect("line")
            self.expect("(")
            p = self.name()
            self.expect(",")
            q = self.name()
            self.expect(")")
            return LineStmt(name, p, q, pos=pos)
        if self.accept("circle"):
            name = self.name()
            self.expect("=")
            if self.accept("through"):
                self.expect("(")
                c = self.name()
                self.expect(",")
                t = self.name()
                self.expect(")")
                return CircleThrough(name, c, t, pos=pos)
            if self.accept("radius"):
                self.expect("(")
                c = self.name()
                self.expect(";")
                p = self.name()
                self.expect(",")
                q = self.name()
                self.expect(")")
                return CircleRadius(name, c, p, q, pos=pos)
            self.fail("'through' or 'radius'")
        if self.accept("assert"):
            return Assert(self.predicate(), pos=pos)
        self.fail("a statement ('point', 'line', 'circle' or 'assert')")

    def selector(self) -> Selector:
        if self.accept("["):
            pos = self.tok.pos
            idx = self.integer()
            if idx not in (0, 1):
                raise GeoSyntaxError("selector index must be 0 or 1", pos)
            self.expect("]")
            return Selector("index", (idx,))
        if self.accept("nearest"):
            return Selector("nearest", (self.name(),))
        if self.accept("farthest"):
            return Selector("farthest", (self.name(),))
        if self.accept("leftof"):
            return Selector("left_of", (self.name(), self.name()))
        if self.accept("rightof"):
            return Selector("right_of", (self.name(), self.name()))
        self.fail("a selector ('[0]', '[1]', 'nearest', 'farthest', 'leftof' or 'rightof')")

    def predicate(self):
        if self.accept("dist2"):
            self.expect("(")
            p = self.name()
            self.expect(",")
            q = self.name()
            self.expect(")")
            self.expect("==")
            return Dist2Eq(p, q, self.expr())
        if self.accept("on"):
            self.expect("(")
            p = self.name()
            self.expect(",")
            c = self.name()
            self.expect(")")
            return On(p, c)
        if self.accept("collinear"):
            self.expect("(")
            p = self.name()
            self.expect(",")
            q = self.name()
            self.expect(",")
            r = self.name()
            self.expect(")")
            return Collinear(p, q, r)
        self.fail("a predicate ('dist2', 'on' or 'collinear')")

    # -- radical expressions ----------------------------------------------

    def expr(self) -> Expr:
        node = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        if self.tok.kind == "int":
            return Num(self.integer())
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if self.accept("sqrt"):
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return Sqrt(node)
        if self.accept("√"):
            if self.tok.kind == "int":
                return Sqrt(Num(self.integer()))
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return Sqrt(node)
        self.fail("a number, '(' or 'sqrt'")


def _kind_of(stmt: Statement) -> Optional[str]:
    if isinstance(stmt, (FreePoint, Intersect)):
        return "point"
    if isinstance(stmt, LineStmt):
        return "line"
    if isinstance(stmt, (CircleThrough, CircleRadius)):
        return "circle"
    return None


def check(ast: ScriptAst) -> None:
    """Reject rebinding, use-before-definition and kind mismatches before any geometry runs."""
    kinds: dict[str, str] = {}

    def need(name: str, allowed: tuple[str, ...], pos: Pos, role: str):
        if name not in kinds:
            raise StaticCheckError(f"{name!r} used before definition", pos)
        if kinds[name] not in allowed:
            raise StaticCheckError(
                f"{role} {name!r} must be a {' or '.join(allowed)}, not a {kinds[name]}", pos)

    pt = ("point",)
    curve = ("line", "circle")
    for stmt in ast.statements:
        pos = stmt.pos
        if isinstance(stmt, LineStmt):
            need(stmt.p, pt, pos, "line endpoint")
            need(stmt.q, pt, pos, "line endpoint")
        elif isinstance(stmt, CircleThrough):
            need(stmt.center, pt, pos, "circle center")
            need(stmt.through, pt, pos, "circle point")
        elif isinstance(stmt, CircleRadius):
            need(stmt.center, pt, pos, "circle center")
            need(stmt.p, pt, pos, "compass point")
            need(stmt.q, pt, pos, "compass point")
        elif isinstance(stmt, Intersect):
            need(stmt.a, curve, pos, "intersected object")
            need(stmt.b, curve, pos, "intersected object")
            if stmt.selector.kind != "index":
                for arg in stmt.selector.args:
                    need(arg, pt, pos, "selector reference")
        elif isinstance(stmt, Assert):
            pred = stmt.predicate
            if isinstance(pred, Dist2Eq):
                need(pred.p, pt, pos, "dist2 argument")
                need(pred.q, pt, pos, "dist2 argument")
            elif isinstance(pred, On):
                need(pred.point, pt, pos, "on() point")
                need(pred.curve, curve, pos, "on() object")
            else:
                for n in (pred.p, pred.q, pred.r):
                    need(n, pt, pos, "collinear argument")
        kind = _kind_of(stmt)
        if kind is not None:
            if stmt.name in kinds:
                raise StaticCheckError(f"{stmt.name!r} is already bound", pos)
            kinds[stmt.name] = kind


def parse(source: str) -> ScriptAst:
    """Parse and statically check a construction script."""
    ast = _Parser(source).script()
    check(ast)
    return ast


def parse_expr(source: str) -> Expr:
    p = _Parser(source)
    node = p.expr()
    if p.tok.kind != "eof":
        p.fail("end of expression")
    return node
