"""Small infix grammar for polynomial and series values in documents.

Operators: ``+ - * ^`` with parentheses and unary minus; integer
literals combine into rationals with ``/``.  In series context the
variable ``t`` is reserved and ``/`` is a full division (the resulting
denominator must be a unit at t = 0); in polynomial context ``/`` is
only allowed with an integer literal divisor, so values stay
polynomials.  Unknown symbols are a parse error, never new variables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ParseError, UnknownVariable
from .exact import BaseField, FieldElement, SparsePolynomial
from .series import SeriesExpression

_SYMBOL_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_SYMBOL_BODY = _SYMBOL_START | set("0123456789")


def _tokenize(text: str, context: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), i + 1))
            i = j
            continue
        if ch in _SYMBOL_START:
            j = i
            while j < n and text[j] in _SYMBOL_BODY:
                j += 1
            tokens.append(("sym", text[i:j], i + 1))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i + 1))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i + 1, context)
    tokens.append(("end", None, n + 1))
    return tokens


class _Parser:
    """Recursive-descent evaluator over a caller-supplied value ring."""

    def __init__(self, text, context, symbol, const, full_division):
        self.tokens = _tokenize(text, context)
        self.pos = 0
        self.context = context
        self.symbol = symbol
        self.const = const
        self.full_division = full_division

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, column):
        raise ParseError(message, column, self.context)

    def parse(self):
        value = self.expr()
        kind, _, col = self.peek()
        if kind != "end":
            self.fail(f"unexpected {kind!r}", col)
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, _, _ = self.peek()
            if kind == "+":
                self.take()
                value = value + self.term()
            elif kind == "-":
                self.take()
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, _, col = self.peek()
            if kind == "*":
                self.take()
                value = value * self.unary()
            elif kind == "/":
                self.take()
                if self.full_division:
                    value = value / self.unary()
                else:
                    nkind, nval, ncol = self.take()
                    if nkind != "num":
                        self.fail("division is only allowed by an integer literal here", ncol)
                    if nval == 0:
                        self.fail("division by zero", ncol)
                    value = value * self.const(Fraction(1, nval))
            else:
                return value

    def unary(self):
        kind, _, _ = self.peek()
        if kind == "-":
            self.take()
            return self.const(Fraction(-1)) * self.unary()
        return self.power()

    def power(self):
        value = self.atom()
        kind, _, _ = self.peek()
        if kind == "^":
            self.take()
            nkind, nval, ncol = self.take()
            if nkind != "num":
                self.fail("exponent must be a nonnegative integer", ncol)
            value = value ** nval
        return value

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            return self.const(Fraction(val))
        if kind == "sym":
            try:
                return self.symbol(val)
            except UnknownVariable:
                self.fail(f"unknown symbol {val!r}", col)
        if kind == "(":
            value = self.expr()
            ckind, _, ccol = self.take()
            if ckind != ")":
                self.fail("expected ')'", ccol)
            return value
        self.fail(f"unexpected {kind!r}", col)


def parse_polynomial(
    text: str,
    field: BaseField,
    variables: Sequence[str],
    context: str = "",
) -> SparsePolynomial:
    """Parse a polynomial in the given variables over the base field."""
    allowed = set(variables)

    def symbol(name):
        if name not in allowed:
            raise UnknownVariable(name)
        return SparsePolynomial.variable(field, name)

    def const(value):
        return SparsePolynomial.constant(field, value)

    parser = _Parser(text, context, symbol, const, full_division=False)
    value = parser.parse()
    # SparsePolynomial ** guards negative exponents; nothing else to check.
    return value


def parse_series_expression(
    text: str,
    field: BaseField,
    transcendentals: Sequence[str],
    context: str = "",
) -> SeriesExpression:
    """Parse a rational-in-t expression with transcendental coefficients."""
    allowed = set(transcendentals)
    if "t" in allowed:
        raise ParseError("'t' is reserved for the series variable", 1, context)

    def symbol(name):
        if name == "t":
            return SeriesExpression.t_power(field, 1)
        if name not in allowed:
            raise UnknownVariable(name)
        return SeriesExpression.constant(field, FieldElement.variable(field, name))

    def const(value):
        return SeriesExpression.constant(field, FieldElement.from_scalar(field, value))

    parser = _Parser(text, context, symbol, const, full_division=True)
    return parser.parse()
