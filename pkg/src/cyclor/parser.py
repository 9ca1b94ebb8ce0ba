"""Recursive-descent parser for ring-element expressions.

Grammar (whitespace is insignificant)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := ('+' | '-') unary | power
    power    := base ('^' INT)?
    base     := INT ('/' INT)? | NAME | 'O' '(' NAME ('^' INT)? ')' | '(' expr ')'

``INT '/' INT`` directly after an operator other than ``/`` is a rational
literal, so ``1/2`` is accepted in polynomial rings while ``t/2`` is not.
``O(t^k)`` is only recognised in series rings and denotes the zero series
known modulo t^k; it lets printed series round-trip with their precision.
Names resolve first to ring variables, then to ``bindings``.
"""

from __future__ import annotations

import re
from typing import Mapping

from gmpy2 import mpq

from .errors import (
    DivisionByZero,
    DivisionNotAllowed,
    ExpressionSyntaxError,
    NotDivisible,
    UnknownVariable,
)
from .rings import Ring, RingElement, Series, exact_divide

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


class _Parser:
    def __init__(self, text: str, ring: Ring, bindings: Mapping[str, RingElement] | None):
        self.text = text
        self.ring = ring
        self.bindings = dict(bindings or {})
        self.tokens = self._tokenize(text)
        self.i = 0

    def _tokenize(self, text):
        tokens, pos = [], 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos == len(text):
                tokens.append(("eof", "", pos))
                return tokens
            m = _TOKEN.match(text, pos)
            if not m:
                raise ExpressionSyntaxError(text, pos, ("integer", "name", "operator"))
            kind = m.lastgroup
            tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()

    # -- token helpers ---------------------------------------------------------

    def peek(self, offset=0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def at(self, value, offset=0):
        kind, text, _ = self.peek(offset)
        return kind == "op" and text == value

    def expect_op(self, value):
        if not self.at(value):
            self.fail((repr(value),))
        self.i += 1

    def expect_int(self) -> int:
        kind, text, _ = self.peek()
        if kind != "int":
            self.fail(("integer",))
        self.i += 1
        return int(text)

    def fail(self, expected):
        raise ExpressionSyntaxError(self.text, self.peek()[2], expected)

    # -- grammar ---------------------------------------------------------------

    def parse(self) -> RingElement:
        value = self.expr()
        if self.peek()[0] != "eof":
            self.fail(("'+'", "'-'", "'*'", "'/'", "end of input"))
        return value

    def expr(self):
        value = self.term()
        while self.at("+") or self.at("-"):
            op = self.peek()[1]
            self.i += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary(after_slash=False)
        while self.at("*") or self.at("/"):
            _, op, pos = self.peek()
            self.i += 1
            if op == "/":
                rhs = self.unary(after_slash=True)
                value = self.divide(value, rhs, pos)
            else:
                value = value * self.unary(after_slash=False)
        return value

    def unary(self, after_slash: bool):
        if self.at("-"):
            self.i += 1
            return -self.unary(after_slash)
        if self.at("+"):
            self.i += 1
            return self.unary(after_slash)
        return self.power(after_slash)

    def power(self, after_slash: bool):
        value = self.base(after_slash)
        if self.at("^"):
            self.i += 1
            value = value ** self.expect_int()
        return value

    def base(self, after_slash: bool):
        kind, text, pos = self.peek()
        if kind == "int":
            self.i += 1
            q = mpq(int(text))
            if not after_slash and self.at("/") and self.peek(1)[0] == "int":
                self.i += 1
                den = self.expect_int()
                if den == 0:
                    raise DivisionByZero(f"zero denominator in rational literal at position {pos}")
                q = q / den
            return self.ring.const(q)
        if kind == "name":
            self.i += 1
            if (
                text == "O"
                and self.ring.kind == "series"
                and "O" not in self.ring.variables
                and self.at("(")
            ):
                return self.big_o()
            if text in self.ring.variables:
                return self.ring.gen(self.ring.variables.index(text))
            if text in self.bindings:
                return self.ring.coerce(self.bindings[text])
            raise UnknownVariable(text, pos)
        if self.at("("):
            self.i += 1
            value = self.expr()
            self.expect_op(")")
            return value
        self.fail(("integer", "name", "'('"))

    def big_o(self) -> Series:
        self.expect_op("(")
        kind, text, _ = self.peek()
        if kind != "name" or text != self.ring.variables[0]:
            self.fail((repr(self.ring.variables[0]),))
        self.i += 1
        k = 1
        if self.at("^"):
            self.i += 1
            k = self.expect_int()
        self.expect_op(")")
        if not 1 <= k <= self.ring.truncation:
            raise ExpressionSyntaxError(self.text, self.peek(-1)[2], (f"exponent in 1..{self.ring.truncation}",))
        return Series._make(self.ring, (mpq(0),) * k)

    def divide(self, a, b, pos):
        if self.ring.kind == "poly":
            raise DivisionNotAllowed("division is not allowed in polynomial rings", pos)
        if b.is_zero():
            raise DivisionByZero(f"division by zero at position {pos}")
        q = exact_divide(a, b)
        if q is None:
            raise NotDivisible(f"quotient at position {pos} does not exist in {self.ring}")
        return q


def parse_expression(
    text: str, ring: Ring, bindings: Mapping[str, RingElement] | None = None
) -> RingElement:
    """Parse ``text`` into the canonical element of ``ring`` it denotes.

    >>> parse_expression("(t+1)*(t-1)", Ring.poly("t"))
    <Poly t^2 - 1 in Q[t]>
    """
    return _Parser(text, ring, bindings).parse()
