"""Parser for rational-function expressions in x and for instance files.

Grammar (left-associative binaries, ``^`` binds tightest, then unary minus)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('-' | '+') unary | power
    power := atom ('^' INT)?
    atom  := INT | INT '/' INT | 'x' | '(' expr ')'

``INT '/' INT`` is read as a rational literal when it is not itself the right
operand of a division; both readings have the same value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotPrime, ParseError, ZeroDenominator
from .fields import Field, QQ, parse_field
from .ratfunc import RatFunc

MAX_EXPONENT = 4096
MAX_DEPTH = 100


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Num, Var, Neg, BinOp, Pow]


# -- tokenizer -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|([-+*/^()]))")


@dataclass
class _Tok:
    kind: str  # "int", "x", an operator character, or "end"
    text: str
    col: int


def _tokenize(text: str, line: int) -> list[_Tok]:
    toks, pos = [], 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1, text)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), start + 1))
        elif m.group(2):
            toks.append(_Tok("x", "x", start + 1))
        else:
            toks.append(_Tok(m.group(3), m.group(3), start + 1))
        pos = m.end()
    toks.append(_Tok("end", "", n + 1))
    return toks


class _Parser:
    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.toks = _tokenize(text, line)
        self.i = 0
        self.depth = 0

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok.col, self.text)

    def expect(self, kind: str) -> _Tok:
        if self.peek().kind != kind:
            what = "end of input" if self.peek().kind == "end" else repr(self.peek().text)
            self.error(f"expected {kind!r}, found {what}")
        return self.take()

    def parse(self) -> Node:
        if self.peek().kind == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind in "+-" and self.peek().kind != "end":
            op = self.take().kind
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary(literal_ok=True)
        while self.peek().kind in ("*", "/"):
            op = self.take().kind
            rhs = self.unary(literal_ok=(op == "*"))
            if op == "/" and isinstance(rhs, Num) and rhs.value == 0:
                self.error("division by zero literal", self.toks[self.i - 1])
            node = BinOp(op, node, rhs)
        return node

    def unary(self, literal_ok: bool) -> Node:
        tok = self.peek()
        if tok.kind in ("-", "+"):
            self.take()
            self._enter()
            inner = self.unary(literal_ok)
            self.depth -= 1
            return Neg(inner) if tok.kind == "-" else inner
        return self.power(literal_ok)

    def power(self, literal_ok: bool) -> Node:
        base = self.atom(literal_ok)
        if self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "int":
                self.error("exponent must be a nonnegative integer literal")
            self.take()
            e = int(tok.text)
            if e > MAX_EXPONENT:
                self.error(f"exponent {e} exceeds {MAX_EXPONENT}", tok)
            if self.peek().kind == "^":
                self.error("chained exponents need parentheses")
            return Pow(base, e)
        return base

    def _enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            self.error("expression nested too deeply")

    def atom(self, literal_ok: bool) -> Node:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            if (literal_ok and self.peek().kind == "/" and self.peek(1).kind == "int"
                    and self.peek(2).kind != "^"):
                self.take()
                den = self.take()
                if int(den.text) == 0:
                    self.error("division by zero literal", den)
                return Num(Fraction(int(tok.text), int(den.text)))
            return Num(Fraction(int(tok.text)))
        if tok.kind == "x":
            self.take()
            return Var()
        if tok.kind == "(":
            self.take()
            self._enter()
            node = self.expr()
            self.depth -= 1
            self.expect(")")
            return node
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        self.error(f"unexpected {what}")


def parse_expr(text: str, line: int = 1) -> Node:
    return _Parser(text, line).parse()


def evaluate(node: Node, field: Field = QQ) -> RatFunc:
    if isinstance(node, Num):
        return RatFunc.constant(field(node.value), field)
    if isinstance(node, Var):
        return RatFunc.x(field)
    if isinstance(node, Neg):
        return -evaluate(node.operand, field)
    if isinstance(node, Pow):
        return evaluate(node.base, field) ** node.exponent
    # walk the left spine iteratively: "x+x+...+x" is as deep as it is long
    spine = []
    while isinstance(node, BinOp):
        spine.append((node.op, node.right))
        node = node.left
    acc = evaluate(node, field)
    for op, right in reversed(spine):
        b = evaluate(right, field)
        if op == "+":
            acc = acc + b
        elif op == "-":
            acc = acc - b
        elif op == "*":
            acc = acc * b
        else:
            if b.is_zero():
                raise ZeroDenominator("division by an expression that evaluates to zero")
            acc = acc / b
    return acc


def parse_ratfunc(text: str, field: Field = QQ, line: int = 1) -> RatFunc:
    """Parse and evaluate an expression in x into a canonical rational function."""
    return evaluate(parse_expr(text, line), field)


def parse_instance_file(text: str):
    """Return (field, generators) from an instance file.

    The first meaningful line must be ``field: q`` or ``field: fp <p>``;
    ``#`` starts a comment and blank lines are skipped.
    """
    field = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if field is None:
            if not line.lower().startswith("field:"):
                raise ParseError("missing 'field:' header", lineno, 1, raw)
            try:
                field = parse_field(line.split(":", 1)[1])
            except NotPrime:
                raise
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 1, raw) from None
            continue
        gens.append(parse_ratfunc(line, field, lineno))
    if field is None:
        raise ParseError("missing 'field:' header", 1, 1, "")
    return field, gens
