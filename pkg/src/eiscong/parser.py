"""Recursive-descent parser for rational expressions in one variable ``t``.

Grammar (``^`` binds tighter than unary minus, which binds tighter than
``*`` and ``/``)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := INT | 't' | '(' expr ')'

Multiplication must be explicit: ``2t`` is rejected.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .errors import ParseError
from .polyfield import IntPoly, RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|([-+*/^()]))")


class Token(NamedTuple):
    kind: str  # 'int', 't', an operator character, or 'end'
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos == len(src):
            break
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(Token("int", m.group(1), start))
        elif m.group(2):
            out.append(Token("t", "t", start))
        else:
            out.append(Token(m.group(3), m.group(3), start))
        pos = m.end()
    out.append(Token("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def take(self, kind: str) -> Token:
        tok = self.cur
        if tok.kind != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok.kind == "end" else repr(tok.text)
            raise ParseError(f"expected {want}, found {got}", tok.pos)
        self.i += 1
        return tok

    def parse(self) -> RatFunc:
        value = self.expr()
        self.take("end")
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while self.cur.kind in "+-":
            op = self.take(self.cur.kind).kind
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.unary()
        while self.cur.kind in "*/":
            tok = self.take(self.cur.kind)
            rhs = self.unary()
            if tok.kind == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by the zero function", tok.pos)
                value = value / rhs
        return value

    def unary(self) -> RatFunc:
        if self.cur.kind == "-":
            self.take("-")
            return -self.unary()
        if self.cur.kind == "+":
            self.take("+")
            return self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.cur.kind == "^":
            self.take("^")
            exp = int(self.take("int").text)
            if self.cur.kind == "^":
                raise ParseError("chained '^' is ambiguous; use parentheses", self.cur.pos)
            return base ** exp
        return base

    def atom(self) -> RatFunc:
        tok = self.cur
        if tok.kind == "int":
            self.take("int")
            return RatFunc.const(int(tok.text))
        if tok.kind == "t":
            self.take("t")
            return RatFunc.t()
        if tok.kind == "(":
            self.take("(")
            value = self.expr()
            self.take(")")
            return value
        got = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"expected a number, 't' or '(', found {got}", tok.pos)


def parse_expression(src: str) -> RatFunc:
    """Parse ``src`` into an exact element of Q(t)."""
    return _Parser(src).parse()


def parse_polynomial(src: str) -> IntPoly:
    """Parse ``src`` and insist that the result lies in Z[t]."""
    value = parse_expression(src)
    if not value.is_integral_polynomial():
        raise ParseError(f"{src!r} is not an integer polynomial", 0)
    return value.to_intpoly()


def parse_value(src: str) -> RatFunc | IntPoly:
    """Parse, returning an IntPoly when the value is integral."""
    value = parse_expression(src)
    return value.to_intpoly() if value.is_integral_polynomial() else value
