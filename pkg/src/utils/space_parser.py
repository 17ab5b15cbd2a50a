"""
Recursive-descent parser for space expressions.

Grammar:

    space    := factor ('*' factor)*
    factor   := 'Pt' | 'P' INT | '(' space ')'
              | 'PB' '(' space ';' divisor (',' divisor)* ')'
              | 'Hyp' '(' space ';' divisor ')'
              | 'Bl' '(' space ')'
    divisor  := ['-'] term (('+' | '-') term)*
    term     := INT ['*'] NAME | NAME | INT

Divisor names are resolved against the ring of the enclosing base space
(h, h1, a, b, xi, z, e, ...). Products associate to the left.
"""

import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..core.chern import (
    BlowupPoint,
    DivisorClass,
    Hypersurface,
    Point,
    Product,
    ProjBundle,
    ProjSpace,
    Space,
    cohomology_ring,
)
from ..core.errors import ChernError, SpaceParseError

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[*;,()+\-]))")
_PROJ = re.compile(r"P(\d+)$")

Token = Tuple[str, str, int]


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            offset = len(text[pos:]) - len(text[pos:].lstrip())
            raise SpaceParseError(f"unexpected character '{text[pos + offset]}'", pos + offset, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, position: Optional[int] = None) -> SpaceParseError:
        return SpaceParseError(message, self.current[2] if position is None else position, self.text)

    def accept(self, value: str) -> bool:
        if self.current[1] == value and self.current[0] != "end":
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> None:
        if not self.accept(value):
            found = self.current[1] or "end of input"
            raise self.error(f"expected '{value}', found '{found}'")

    def finish(self) -> None:
        if self.current[0] != "end":
            raise self.error(f"unexpected '{self.current[1]}'")

    # grammar

    def space(self) -> Space:
        left = self.factor()
        while self.accept("*"):
            left = Product(left, self.factor())
        return left

    def factor(self) -> Space:
        kind, value, pos = self.current
        if kind == "op" and value == "(":
            self.i += 1
            inner = self.space()
            self.expect(")")
            return inner
        if kind != "name":
            raise self.error(f"expected a space, found '{value or 'end of input'}'")
        self.i += 1
        if value == "Pt":
            return Point()
        proj = _PROJ.match(value)
        if proj:
            return ProjSpace(int(proj.group(1)))
        if value == "PB":
            self.expect("(")
            base = self.space()
            self.expect(";")
            classes = [self.divisor(base)]
            while self.accept(","):
                classes.append(self.divisor(base))
            self.expect(")")
            return ProjBundle(base, tuple(classes))
        if value == "Hyp":
            self.expect("(")
            ambient = self.space()
            self.expect(";")
            d = self.divisor(ambient)
            self.expect(")")
            return Hypersurface(ambient, d)
        if value == "Bl":
            self.expect("(")
            start = self.current[2]
            inner = self.space()
            self.expect(")")
            try:
                return BlowupPoint(inner)
            except ChernError as e:
                raise SpaceParseError(str(e), start, self.text) from None
        raise SpaceParseError(f"unknown constructor '{value}'", pos, self.text)

    def divisor(self, base: Space) -> DivisorClass:
        coeffs: Dict[str, Fraction] = {}
        sign = -1 if self.accept("-") else 1
        constant = Fraction(0)
        while True:
            kind, value, pos = self.current
            if kind == "int":
                self.i += 1
                coeff = Fraction(int(value))
                self.accept("*")
                if self.current[0] == "name":
                    name_pos, name = self.current[2], self.current[1]
                    self.i += 1
                    self._add(coeffs, base, name, sign * coeff, name_pos)
                else:
                    constant += sign * coeff
            elif kind == "name":
                self.i += 1
                self._add(coeffs, base, value, Fraction(sign), pos)
            else:
                raise self.error(f"expected a divisor term, found '{value or 'end of input'}'")
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        if constant:
            raise self.error("a divisor class cannot have a nonzero constant part", pos)
        return DivisorClass.from_mapping(base, coeffs)

    def _add(self, coeffs: Dict[str, Fraction], base: Space, name: str, c: Fraction, pos: int) -> None:
        ring = cohomology_ring(base)
        try:
            ring.resolve(name)
        except ChernError as e:
            raise SpaceParseError(str(e), pos, self.text) from None
        coeffs[name] = coeffs.get(name, Fraction(0)) + c


def parse_space(text: str) -> Space:
    """Parse a space expression such as ``PB(P2; 0, h)`` or ``Hyp(P1*P1; a+b)``."""
    parser = _Parser(text)
    space = parser.space()
    parser.finish()
    return space


def parse_divisor(text: str, space: Space) -> DivisorClass:
    """Parse a divisor class on ``space``, e.g. ``h`` or ``a+2b``."""
    parser = _Parser(text)
    d = parser.divisor(space)
    parser.finish()
    return d
