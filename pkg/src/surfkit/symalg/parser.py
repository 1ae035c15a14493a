"""Plain-text polynomial expressions.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INTEGER)?
    atom   := NUMBER | SYMBOL | "(" expr ")"

``NUMBER`` is an integer or a rational literal such as ``3/2``; ``SYMBOL``
matches ``[a-z][a-z0-9_]*``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from ..errors import ExpressionSyntaxError, SymbolError
from .poly import Poly, _sorted_gens

_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([a-z][a-z0-9_]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.replace("−", "-")
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        pos = m.end()
        num, sym, op = m.groups()
        if num is not None:
            tokens.append(("num", num, m.start(1)))
        elif sym is not None:
            tokens.append(("sym", sym, m.start(2)))
        elif op is not None:
            if op not in "+-*^()":
                raise ExpressionSyntaxError(f"unexpected character {op!r} at column {m.start(3) + 1}")
            tokens.append(("op", op, m.start(3)))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, gens: tuple[str, ...] | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.gens = gens

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        if tok[0] != "end":
            self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExpressionSyntaxError(f"{msg} at column {tok[2] + 1} in {self.text!r}")

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            p = p * self.unary()
        return p

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num" or "/" in tok[1]:
                self.fail("exponent must be a nonnegative integer", tok)
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            num, _, den = val.partition("/")
            if den and int(den) == 0:
                self.fail("zero denominator", tok)
            return Poly.const(Fraction(int(num), int(den) if den else 1))
        if kind == "sym":
            if self.gens is not None and val not in self.gens:
                raise SymbolError(f"undeclared symbol {val!r} in {self.text!r}")
            return Poly.var(val)
        if tok[:2] == ("op", "("):
            p = self.expr()
            if self.take()[:2] != ("op", ")"):
                self.fail("missing ')'")
            return p
        self.fail(f"unexpected {val!r}" if val else "unexpected end of input", tok)


def parse_poly(text: str, gens: Iterable[str] | None = None) -> Poly:
    """Parse ``text``; with ``gens`` given, the result lives in that ring and other symbols are errors."""
    declared = _sorted_gens(gens) if gens is not None else None
    p = _Parser(text, declared).parse()
    if declared is not None:
        p = p.with_gens(declared)
    return p
