"""
Input grammar for equations F(y, p) = 0 and for center coordinates.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" integer)?
    atom   := integer | identifier | "(" expr ")"

Division is accepted only by a nonzero rational constant; implicit
multiplication ("2y", "(p)(y)") is rejected with the offending position.
"""

from dataclasses import dataclass
from fractions import Fraction

from sympy import Integer, Poly, Rational, Symbol
from sympy.polys.domains import QQ

from algebra.errors import ParseError
from algebra.poly import INFINITY, P, Y, BivariatePolynomial, fractions_low_to_high

_OPERATORS = "+-*/^()"
_INFINITY_WORDS = ("oo", "inf", "infinity")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    position: int


def tokens(text):
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif text.startswith("**", i):
            yield Token("op", "^", i)
            i += 2
        elif c in _OPERATORS:
            yield Token("op", c, i)
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield Token("int", text[i:j], i)
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield Token("name", text[i:j], i)
            i = j
        else:
            raise ParseError(text, i, f"unexpected character {c!r}")
    yield Token("end", "", n)


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.variables = {name: Symbol(name) for name in variables}
        self.stream = list(tokens(text))
        self.index = 0

    @property
    def current(self):
        return self.stream[self.index]

    def advance(self):
        token = self.current
        self.index += 1
        return token

    def error(self, message, token=None):
        token = token or self.current
        return ParseError(self.text, token.position, message)

    def expect(self, text):
        if self.current.text != text or self.current.kind != "op":
            raise self.error(f"expected {text!r}")
        return self.advance()

    def parse(self):
        if self.current.kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.current.kind != "end":
            if self.current.kind in ("int", "name") or self.current.text == "(":
                raise self.error("implicit multiplication is not allowed; use '*'")
            raise self.error(f"unexpected {self.current.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance()
            rhs = self.unary()
            if op.text == "*":
                value = value * rhs
                continue
            if not rhs.is_Rational:
                raise self.error("division is only allowed by a rational constant", op)
            if rhs == 0:
                raise self.error("division by zero", op)
            value = value / rhs
        return value

    def unary(self):
        if self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            self.advance()
            if self.current.kind != "int":
                raise self.error("exponent must be a nonnegative integer")
            base = base ** int(self.advance().text)
        if self.current.kind in ("int", "name") or (self.current.kind == "op" and self.current.text == "("):
            raise self.error("implicit multiplication is not allowed; use '*'")
        return base

    def atom(self):
        token = self.current
        if token.kind == "int":
            self.advance()
            return Integer(int(token.text))
        if token.kind == "name":
            if token.text not in self.variables:
                allowed = ", ".join(sorted(self.variables))
                raise self.error(f"unknown variable {token.text!r} (allowed: {allowed})")
            self.advance()
            return self.variables[token.text]
        if token.kind == "op" and token.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        if token.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {token.text!r}")


def parse_polynomial(text, variables=("y", "p")):
    """sympy Poly over QQ in the given variables."""
    expr = _Parser(text, variables).parse()
    return Poly(expr, *[Symbol(v) for v in variables], domain=QQ)


@dataclass(frozen=True)
class InputEquation:
    source: str
    polynomial: BivariatePolynomial

    def __str__(self):
        return str(self.polynomial)


def parse(text):
    """Parse an equation F(y, p) with p standing for y'."""
    poly = parse_polynomial(text, ("y", "p"))
    if poly.is_zero:
        raise ParseError(text, 0, "equation is identically zero")
    return InputEquation(text, BivariatePolynomial.from_sympy(Poly(poly.as_expr(), Y, P)))


@dataclass(frozen=True)
class RootSpec:
    """All roots of a rational polynomial in z (coefficients low to high)."""

    coefficients: tuple

    def __str__(self):
        z = Symbol("z")
        expr = sum(Rational(c.numerator, c.denominator) * z ** k for k, c in enumerate(self.coefficients))
        return f"root({expr})"


def parse_coordinate(text):
    """Fraction | INFINITY | RootSpec."""
    stripped = text.strip()
    if stripped.lower() in _INFINITY_WORDS:
        return INFINITY
    if stripped.startswith("root(") and stripped.endswith(")"):
        inner = stripped[5:-1]
        offset = text.index("root(") + 5
        try:
            poly = parse_polynomial(inner, ("z",))
        except ParseError as e:
            raise ParseError(text, offset + e.position, e.message) from e
        if poly.degree() < 1:
            raise ParseError(text, offset, "root() needs a polynomial of positive degree")
        return RootSpec(tuple(fractions_low_to_high(poly)))
    try:
        value = _Parser(stripped, ()).parse()
    except ParseError as e:
        raise ParseError(text, text.index(stripped) + e.position, e.message) from e
    return Fraction(int(value.p), int(value.q))


def parse_point(text):
    """"y0,p0" into a pair of coordinates."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(text, 0, "a point is written y0,p0")
    first = parse_coordinate(parts[0])
    try:
        second = parse_coordinate(parts[1])
    except ParseError as e:
        raise ParseError(text, len(parts[0]) + 1 + e.position, e.message) from e
    return first, second
