"""Recursive-descent parser for the super-expression grammar.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | SYMBOL | '(' expr ')'

Symbols are the coordinates of the given system plus the generators
``g1..gM``.  Division is only allowed by nonzero rational constants.
Writing the same odd symbol twice as a factor of one product (``th1*th1``,
``th1^2``) is rejected as parity misuse rather than silently giving 0.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError, UnknownSymbol
from .grassmann import DEFAULT_GENERATORS, SuperNumber
from .superpoly import CoordinateSystem, SuperPolynomial

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(text: str):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        num, name, op = mt.groups()
        start = mt.start(mt.lastindex)
        if num is not None:
            tokens.append(("num", num, start))
        elif name is not None:
            tokens.append(("name", name, start))
        elif op is not None and not op.isspace():
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}", start)
            tokens.append(("op", op, start))
        pos = mt.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, coords, m):
        self.text = text
        self.coords = coords
        self.m = m
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self):
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return value

    def expr(self):
        value, _ = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs, _ = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self):
        value, odd_seen = self.unary()
        odd_seen = list(odd_seen)
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                rhs, rhs_odd = self.unary()
                for s in rhs_odd:
                    if s in odd_seen:
                        raise ParseError(f"odd variable {s} squared", pos)
                odd_seen.extend(rhs_odd)
                value = value * rhs
            elif kind == "op" and val == "/":
                self.take()
                rhs, _ = self.unary()
                if not rhs.is_constant() or rhs.constant_term().soul().terms:
                    raise ParseError("division is only allowed by rational constants", pos)
                d = rhs.constant_term().body()
                if d == 0:
                    raise ParseError("division by zero", pos)
                value = value * (1 / d)
            else:
                return value, odd_seen

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            value, odd = self.unary()
            return (-value if val == "-" else value), odd
        return self.power()

    def power(self):
        value, odd = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2, p2 = self.take()
            if k2 != "num" or not v2.isdigit():
                raise ParseError("exponent must be a non-negative integer", p2)
            e = int(v2)
            if odd and e >= 2:
                raise ParseError(f"odd variable {odd[0]} squared", pos)
            value = value**e
            if e == 0:
                odd = []
        return value, odd

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            c = Fraction(val)
            return SuperPolynomial.constant(c, self.coords, self.m), []
        if kind == "name":
            return self.symbol(val, pos)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect(")")
            return value, []
        raise ParseError("unexpected end of input" if kind == "end" else f"unexpected token {val!r}", pos)

    def symbol(self, name, pos):
        if name in self.coords.names:
            var = SuperPolynomial.variable(name, self.coords, self.m)
            return var, ([name] if self.coords.parity(name) else [])
        mt = re.fullmatch(r"g(\d+)", name)
        if mt:
            idx = int(mt.group(1))
            if 1 <= idx <= self.m:
                return SuperPolynomial.generator(idx, self.coords, self.m), [name]
        raise UnknownSymbol(f"unknown symbol {name!r} at position {pos}")


def parse_expression(text: str, coords: CoordinateSystem, m: int = DEFAULT_GENERATORS) -> SuperPolynomial:
    return _Parser(text, coords, m).parse()


def parse_supernumber(text: str, m: int = DEFAULT_GENERATORS) -> SuperNumber:
    return parse_expression(text, CoordinateSystem(), m).constant_term()
