"""Text input for polynomials in T (and X), with ``u`` naming the generator of F_{p^n}.

Accepted syntax (a superset of what the printers emit)::

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor (("*" | "/")? factor)*        # juxtaposition multiplies
    factor := atom ("^" uint)?
    atom   := uint | "T" | "X" | "u" | "(" expr ")"

``/`` only divides by X-free, nonzero operands.  Printed output of
:func:`hypercf.polyring.format_tpoly` and :func:`format_xpoly` parses back to the
same object.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .ffield import Field, FieldElement, FieldError
from .polyring import RationalFunc, TPoly, XPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.col = line, col
        super().__init__(f"{message} at line {line}, column {col}")


@dataclass
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1) is not None:
            toks.append(_Tok("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            toks.append(_Tok("op", ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, field: Field, names: frozenset[str]):
        self.text = text
        self.field = field
        self.names = names
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok.pos)

    def parse(self) -> XPoly:
        if self.peek().kind == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}")
        return value

    def expr(self) -> XPoly:
        neg = False
        if self.peek().text == "-" and self.peek().kind == "op":
            self.take()
            neg = True
        value = self.term()
        if neg:
            value = -value
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> XPoly:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.take()
                value = value * self.factor()
            elif tok.kind == "op" and tok.text == "/":
                self.take()
                rhs_tok = self.peek()
                rhs = self.factor()
                if rhs.degree is None:
                    self.fail("division by zero", rhs_tok)
                if rhs.degree > 0:
                    self.fail("division by an expression in X", rhs_tok)
                value = value.scale(rhs.coeffs[0].inverse())
            elif tok.kind == "name" or (tok.kind == "op" and tok.text == "("):
                value = value * self.factor()
            else:
                return value

    def factor(self) -> XPoly:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "num":
                self.fail("exponent must be a non-negative integer", tok)
            return base ** int(tok.text)
        return base

    def atom(self) -> XPoly:
        tok = self.take()
        F = self.field
        if tok.kind == "num":
            return XPoly(F, [int(tok.text)])
        if tok.kind == "name":
            if tok.text not in self.names:
                self.fail(f"unknown symbol {tok.text!r}", tok)
            if tok.text == "T":
                return XPoly(F, [TPoly.T(F)])
            if tok.text == "X":
                return XPoly.X(F)
            if F.n == 1:
                self.fail("'u' needs an extension field (--ext-modulus)", tok)
            return XPoly(F, [F.gen])
        if tok.kind == "op" and tok.text == "(":
            value = self.expr()
            close = self.take()
            if close.text != ")":
                self.fail("expected ')'", close)
            return value
        self.fail("expected a number, a variable or '('", tok)


def parse_xpoly(text: str, field: Field) -> XPoly:
    try:
        return _Parser(text, field, frozenset({"T", "X", "u"})).parse()
    except (ZeroDivisionError, FieldError) as exc:
        raise ParseError(str(exc), text, 0) from None


def parse_rational(text: str, field: Field) -> RationalFunc:
    try:
        value = _Parser(text, field, frozenset({"T", "u"})).parse()
    except (ZeroDivisionError, FieldError) as exc:
        raise ParseError(str(exc), text, 0) from None
    return value.coeff(0)


def parse_tpoly(text: str, field: Field) -> TPoly:
    rf = parse_rational(text, field)
    if not rf.is_poly():
        raise ParseError("expected a polynomial in T", text, 0)
    return rf.num


def parse_element(text: str, field: Field) -> FieldElement:
    rf = parse_rational(text, field)
    if not rf.is_constant():
        raise ParseError("expected a field constant", text, 0)
    return rf.num.coeff(0)


def parse_modulus(text: str, p: int) -> tuple[int, ...]:
    """Parse a monic polynomial in ``u`` over F_p into an ascending tuple."""
    from .ffield import GF

    F = GF(p)
    toks = text.replace("u", "T")
    try:
        poly = _Parser(toks, F, frozenset({"T"})).parse().coeff(0)
    except (ZeroDivisionError, FieldError) as exc:
        raise ParseError(str(exc), text, 0) from None
    if not poly.is_poly():
        raise ParseError("modulus must be a polynomial in u", text, 0)
    return tuple(int(c) for c in poly.num.coeffs)
