"""Arithmetic expressions over subscripted terms and named symbols.

Grammar (whitespace ignored)::

    equation := ref '=' expr
    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := ('-' | '+') unary | power
    power    := atom (('^' | '**') exponent)?
    exponent := ['-'] INT | '(' ['-'] INT ')'
    atom     := INT | ref | NAME | '(' expr ')'
    ref      := NAME '[' INDEX (('+' | '-') INT)? ']'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..errors import ParseError
from ..poly import MultiPoly, VarTable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()\[\]=]))")


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Ref:
    """``name[index + offset]``."""

    name: str
    offset: int


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.index_name: str | None = None

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def at(self, value) -> bool:
        tok = self.toks[self.i]
        return tok[0] == "op" and tok[1] == value

    def expr(self):
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.at("-"):
            self.take()
            return Neg(self.unary())
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^") or self.at("**"):
            self.take()
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        paren = self.at("(")
        if paren:
            self.take()
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        e = sign * int(self.take("int")[1])
        if paren:
            self.take("op", ")")
        return e

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return Num(int(value))
        if kind == "name":
            self.take()
            if self.at("["):
                return self.subscript(value)
            return Sym(value)
        if self.at("("):
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        raise ParseError(f"unexpected {value or 'end of input'!r}", pos)

    def subscript(self, name: str) -> Ref:
        self.take("op", "[")
        _, idx, pos = self.take("name")
        if self.index_name is None:
            self.index_name = idx
        elif idx != self.index_name:
            raise ParseError(f"mixed index variables {self.index_name!r} and {idx!r}", pos)
        offset = 0
        if self.at("+") or self.at("-"):
            sign = 1 if self.take()[1] == "+" else -1
            offset = sign * int(self.take("int")[1])
        self.take("op", "]")
        return Ref(name, offset)


def parse_expression(text: str):
    p = _Parser(text)
    node = p.expr()
    p.take("end")
    return node


def parse_equation(text: str) -> tuple[Ref, object]:
    p = _Parser(text)
    lhs = p.atom()
    if not isinstance(lhs, Ref):
        raise ParseError("the left-hand side must be a single subscripted term", 0)
    p.take("op", "=")
    rhs = p.expr()
    p.take("end")
    return lhs, rhs


def walk(node):
    yield node
    if isinstance(node, (Neg,)):
        yield from walk(node.arg)
    elif isinstance(node, BinOp):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, Pow):
        yield from walk(node.base)


def evaluate_ast(node, ref: Callable[[Ref], object], sym: Callable[[str], object], const: Callable[[int], object]):
    """Evaluate over any ring/field whose values support + - * / and integer powers."""

    def ev(n):
        if isinstance(n, Num):
            return const(n.value)
        if isinstance(n, Ref):
            return ref(n)
        if isinstance(n, Sym):
            return sym(n.name)
        if isinstance(n, Neg):
            return -ev(n.arg)
        if isinstance(n, Pow):
            return ev(n.base) ** n.exponent
        a, b = ev(n.left), ev(n.right)
        if n.op == "+":
            return a + b
        if n.op == "-":
            return a - b
        if n.op == "*":
            return a * b
        return a / b

    return ev(node)


def parse_poly(text: str, vars: VarTable) -> MultiPoly:
    """Parse an integer polynomial in the variables of ``vars``."""
    node = parse_expression(text)
    for n in walk(node):
        if isinstance(n, Ref):
            raise ParseError("subscripted terms are not allowed in a polynomial")
        if isinstance(n, Sym) and n.name not in vars:
            raise ParseError(f"unknown variable {n.name!r}")
    try:
        value = evaluate_ast(
            node,
            ref=None,
            sym=lambda name: _PolyVal(MultiPoly.gen(vars, name)),
            const=lambda c: _PolyVal(MultiPoly.constant(vars, c)),
        )
    except _NotPolynomial as exc:
        raise ParseError(str(exc)) from None
    return value.p


class _NotPolynomial(Exception):
    pass


class _PolyVal:
    """MultiPoly wrapper that allows exact division by constants and negative-free powers only."""

    __slots__ = ("p",)

    def __init__(self, p):
        self.p = p

    def __add__(self, o):
        return _PolyVal(self.p + o.p)

    def __sub__(self, o):
        return _PolyVal(self.p - o.p)

    def __mul__(self, o):
        return _PolyVal(self.p * o.p)

    def __neg__(self):
        return _PolyVal(-self.p)

    def __pow__(self, e):
        if e < 0:
            raise _NotPolynomial("negative exponent in a polynomial")
        return _PolyVal(self.p ** e)

    def __truediv__(self, o):
        from ..errors import NonDivisible

        try:
            return _PolyVal(self.p.exact_div(o.p))
        except (NonDivisible, ValueError):
            raise _NotPolynomial("division does not give a polynomial") from None


def fraction_const(c: int) -> Fraction:
    return Fraction(c)
