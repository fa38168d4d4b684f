"""Reader for polynomial system files and single polynomial expressions.

File format::

    # comment
    vars x1 x2;          # declaration, variables ordered x1 > x2
    x2^10
    x1*x2^3 + x2^5       # one polynomial per line
    x1^11

Expression grammar, loosest to tightest binding::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' | <juxtaposition>) unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | VARIABLE | '(' expr ')'

Division is only allowed by non-zero constants.  A trailing ``;`` or ``,``
on a polynomial line is ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .poly import Polynomial, Ring

__all__ = ["ParseError", "parse_polynomial", "parse_system"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class _Tok:
    kind: str  # 'num', 'var', 'op', 'end'
    text: str
    col: int


def _tokenize(text: str, line: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", line, col)
        if m.group(1):
            toks.append(_Tok("num", m.group(1), m.start(1) + 1))
        elif m.group(2):
            toks.append(_Tok("var", m.group(2), m.start(2) + 1))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            toks.append(_Tok("op", op, m.start(3) + 1))
        pos = m.end()
    toks.append(_Tok("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text: str, ring: Ring, line: int):
        self.ring = ring
        self.line = line
        self.toks = _tokenize(text, line)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok.col)

    def parse(self) -> Polynomial:
        if self.peek().kind == "end":
            self.fail("empty expression")
        e = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected token {self.peek().text!r}")
        return e

    def expr(self) -> Polynomial:
        acc = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _starts_atom(self, tok: _Tok) -> bool:
        return tok.kind in ("num", "var") or (tok.kind == "op" and tok.text == "(")

    def term(self) -> Polynomial:
        acc = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.take()
                acc = acc * self.unary()
            elif tok.kind == "op" and tok.text == "/":
                self.take()
                div = self.unary()
                if not div.is_constant() or div.is_zero():
                    self.fail("division only by non-zero constants", tok)
                c = div.terms[0]
                if self.ring.modulus is None:
                    acc = acc.scale(Fraction(1) / c)
                else:
                    acc = acc.scale(pow(c, -1, self.ring.modulus))
            elif self._starts_atom(tok):
                acc = acc * self.unary()
            else:
                return acc

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return -self.unary()
        if tok.kind == "op" and tok.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "num":
                self.fail("exponent must be a non-negative integer", tok)
            return base ** int(tok.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "num":
            return self.ring.constant(int(tok.text))
        if tok.kind == "var":
            if tok.text not in self.ring.variables:
                self.fail(f"undeclared variable {tok.text!r}", tok)
            return self.ring.gen(tok.text)
        if tok.kind == "op" and tok.text == "(":
            e = self.expr()
            close = self.take()
            if not (close.kind == "op" and close.text == ")"):
                self.fail("expected ')'", close)
            return e
        if tok.kind == "end":
            self.fail("unexpected end of expression", tok)
        self.fail(f"unexpected token {tok.text!r}", tok)


def parse_polynomial(text: str, ring: Ring, line: int = 1) -> Polynomial:
    """Parse one expression into ``ring``."""
    return _Parser(text.rstrip().rstrip(";,"), ring, line).parse()


_DECL = re.compile(r"^\s*vars\b(.*)$")


def parse_system(text: str, modulus: Optional[int] = None):
    """Parse a system file into ``(ring, generators)``.

    Zero generators are dropped; a system with no non-zero generator is an
    error.
    """
    ring = None
    polys = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if ring is None:
            m = _DECL.match(body)
            if not m:
                raise ParseError("expected a 'vars ...;' declaration", lineno, 1)
            names = m.group(1).strip().rstrip(";").replace(",", " ").split()
            if not names:
                raise ParseError("no variables declared", lineno, 1)
            for name in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                    raise ParseError(f"bad variable name {name!r}", lineno,
                                     body.index(name) + 1)
            try:
                ring = Ring(names, modulus)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 1) from None
            continue
        polys.append(parse_polynomial(body, ring, lineno))
    if ring is None:
        raise ParseError("empty system: no 'vars' declaration", 1, 1)
    nonzero = [f for f in polys if not f.is_zero()]
    if not nonzero:
        raise ParseError("empty system: no non-zero polynomial", max(1, len(text.splitlines())), 1)
    return ring, nonzero
