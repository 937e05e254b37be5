"""Text format for homogeneous forms.

Grammar (whitespace is ignored)::

    expression  := sign? term (('+' | '-') term)*
    term        := coefficient ('*' factor)* | factor ('*' factor)*
    factor      := variable ('^' positive-integer)?
    coefficient := integer | integer '/' positive-integer

Variables are single letters from the ring (a subset of x, y, z, t).  Products
need an explicit ``*``; ``6yzt`` is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .hessmap import Form, NotHomogeneous
from .polyring import Exponent, MultiPoly

FORM_VARIABLES = ("x", "y", "z", "t")

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.)")


class FormSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        self.position = position
        self.text = text
        caret = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {caret}")


class UnknownVariable(ValueError):
    def __init__(self, name: str, position: int, ring: Sequence[str]):
        self.name = name
        self.position = position
        super().__init__(f"unknown variable {name!r} at position {position} (ring is {','.join(ring)})")


@dataclass
class _Tok:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks: List[_Tok] = []
    i = 0
    while True:
        while i < len(text) and text[i].isspace():
            i += 1
        if i == len(text):
            break
        m = _TOKEN.match(text, i)
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^":
                raise FormSyntaxError(f"unexpected character {ch!r}", m.start(3), text)
            toks.append(_Tok("op", ch, m.start(3)))
        i = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: Sequence[str]):
        self.text = text
        self.ring = tuple(ring)
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "end" else repr(tok.value)
        raise FormSyntaxError(f"{message}, found {found}", tok.pos, self.text)

    def expect_int(self, what: str) -> int:
        tok = self.peek()
        if tok.kind != "int":
            self.fail(f"expected {what}")
        self.take()
        return int(tok.value)

    def expression(self) -> List[Tuple[Fraction, Exponent, int]]:
        terms = []
        sign = 1
        if self.peek().kind == "op" and self.peek().value in "+-":
            sign = -1 if self.take().value == "-" else 1
        while True:
            start = self.peek().pos
            coeff, exp = self.term()
            terms.append((sign * coeff, exp, start))
            tok = self.peek()
            if tok.kind == "end":
                return terms
            if tok.kind == "op" and tok.value in "+-":
                self.take()
                sign = -1 if tok.value == "-" else 1
                continue
            self.fail("expected '+', '-' or '*'" if tok.kind != "op" else "expected '+' or '-'")

    def term(self) -> Tuple[Fraction, Exponent]:
        exp = [0] * len(self.ring)
        coeff = Fraction(1)
        tok = self.peek()
        if tok.kind == "int":
            num = self.expect_int("integer")
            coeff = Fraction(num)
            if self.peek().kind == "op" and self.peek().value == "/":
                self.take()
                den_tok = self.peek()
                den = self.expect_int("denominator")
                if den == 0:
                    self.fail("denominator must be positive", den_tok)
                coeff = Fraction(num, den)
        elif tok.kind == "name":
            self.factor(exp)
        else:
            self.fail("expected a coefficient or variable")
        while self.peek().kind == "op" and self.peek().value == "*":
            self.take()
            self.factor(exp)
        if self.peek().kind in ("int", "name"):
            self.fail("expected '*' between factors")
        return coeff, tuple(exp)

    def factor(self, exp: List[int]) -> None:
        tok = self.peek()
        if tok.kind != "name":
            self.fail("expected a variable")
        self.take()
        if tok.value not in self.ring:
            raise UnknownVariable(tok.value, tok.pos, self.ring)
        power = 1
        if self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            ptok = self.peek()
            power = self.expect_int("exponent")
            if power == 0:
                self.fail("exponent must be positive", ptok)
        exp[self.ring.index(tok.value)] += power


def _collect(terms) -> Dict[Exponent, Fraction]:
    acc: Dict[Exponent, Fraction] = {}
    for c, e, _ in terms:
        acc[e] = acc.get(e, Fraction(0)) + c
    return acc


def parse_form(text: str, ring: Sequence[str] = FORM_VARIABLES[:3], degree: Optional[int] = None) -> Form:
    """Parse a homogeneous form over ``ring``.

    ``degree`` only matters when the text denotes the zero form, which is
    homogeneous of every degree; otherwise it is inferred and checked.
    """
    ring = tuple(ring)
    unknown = [v for v in ring if v not in FORM_VARIABLES]
    if unknown:
        raise ValueError(f"ring variables must be drawn from {FORM_VARIABLES}, got {unknown}")
    terms = _Parser(text, ring).expression()
    poly = MultiPoly(ring, _collect(terms))
    # report offending terms as written, before cancellation
    written = [(e, pos) for c, e, pos in terms if c]
    degrees = {sum(e) for e, _ in written}
    if len(degrees) > 1:
        first = written[0]
        other = next(w for w in written if sum(w[0]) != sum(first[0]))
        raise NotHomogeneous(
            f"term at position {first[1]} has degree {sum(first[0])} "
            f"but term at position {other[1]} has degree {sum(other[0])}",
            terms=(first[0], other[0]),
        )
    if poly.is_zero():
        return Form(poly, degree or 0)
    d = poly.homogeneous_degree()
    if degree is not None and degree != d:
        raise NotHomogeneous(f"form has degree {d}, expected {degree}")
    return Form(poly, d)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(exp: Exponent, ring: Sequence[str]) -> str:
    parts = []
    for name, k in zip(ring, exp):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: MultiPoly) -> str:
    """Canonical text for any polynomial: grlex order, leading term first."""
    if p.is_zero():
        return "0"
    out = []
    for i, (exp, c) in enumerate(p.sorted_terms()):
        mono = _format_monomial(exp, p.ring)
        mag = abs(c)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(out)


def print_form(f: Form) -> str:
    return format_poly(f.poly)
