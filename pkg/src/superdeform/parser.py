"""Recursive-descent parser for coefficient expressions.

Grammar (whitespace is insignificant)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" ["-"] INTEGER)?
    atom   := INTEGER | "i" | IDENT | "(" expr ")"

``-x^2`` is ``-(x^2)``; ``^`` binds tighter than unary minus and takes an
integer literal only.  Exactly one variable name is allowed per expression.
"""

from __future__ import annotations

import re

from .errors import DivisionByZeroExpression, ExpressionSyntaxError
from .scalar import I, RationalFunction

__all__ = ["parse_expression", "tokenize"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\S))")


def tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("ident", m.group(2), start))
        else:
            op = m.group(3)
            if op not in "+-*/^()":
                raise ExpressionSyntaxError(f"unexpected character {op!r}", start, src)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, var: str | None):
        self.src = src
        self.tokens = tokenize(src)
        self.pos = 0
        self.var = var

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ExpressionSyntaxError(message, tok[2], self.src)

    def const(self, c):
        return RationalFunction.constant(c, self.var or "x")

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        if self.var is not None:
            value = value.with_var(self.var)
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise DivisionByZeroExpression(
                        f"division by zero at position {tok[2]} in {self.src!r}"
                    )
                value = value / rhs
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("-", "+"):
            self.take()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            negative = False
            if self.peek()[1] == "-":
                self.take()
                negative = True
            tok = self.take()
            if tok[0] != "int":
                self.fail("exponent must be an integer literal", tok)
            k = int(tok[1])
            if negative:
                if base.is_zero():
                    raise DivisionByZeroExpression(
                        f"negative power of zero at position {tok[2]} in {self.src!r}"
                    )
                k = -k
            return base ** k
        return base

    def atom(self):
        tok = self.take()
        kind, text, _ = tok
        if kind == "int":
            return self.const(int(text))
        if kind == "ident":
            if text == "i":
                return self.const(I)
            if self.var is None:
                self.var = text
            if text != self.var:
                self.fail(f"unknown symbol {text!r} (variable is {self.var!r})", tok)
            return RationalFunction.variable(self.var)
        if text == "(":
            value = self.expr()
            self.expect(")")
            return value
        self.fail(f"unexpected {text or 'end of input'!r}", tok)


def parse_expression(src: str, var: str | None = None) -> RationalFunction:
    """Parse ``src`` into a canonical :class:`RationalFunction`.

    If ``var`` is None the first identifier other than ``i`` becomes the
    variable (``x`` for constant expressions).
    """
    return _Parser(src, var).parse()
