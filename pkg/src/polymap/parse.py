"""Text grammar for polynomial maps.

Grammar (EBNF, also documented in the README)::

    map      := expr (';' expr)*
    expr     := ('+'|'-')? term (('+'|'-') term)*
    term     := factor ('*'? factor)*          -- juxtaposition multiplies
    factor   := base ('^' nat)?
    base     := rational | 'i' | ident | '(' expr ')'
    rational := digits ('/' digits)? | digits '.' digits

``i`` is the imaginary unit and cannot be used as a variable name.
Printing uses graded-lexicographic term order (highest degree first) with
the ring's variable order, so ``parse(format(p)) == p`` exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import GaussRat, MPoly, PolyMap, grlex_key

__all__ = [
    "ParseError",
    "parse_poly",
    "parse_poly_map",
    "format_poly",
    "format_poly_map",
]


class ParseError(ValueError):
    """Syntax or lookup failure, carrying the offending text position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_NUM, _IDENT, _OP, _END = "num", "ident", "op", "end"


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == ".":
                i += 1
                if i >= n or not text[i].isdigit():
                    raise ParseError("expected digits after decimal point", i)
                while i < n and text[i].isdigit():
                    i += 1
                value = Fraction(text[start:i])
            elif i < n and text[i] == "/":
                j = i + 1
                if j >= n or not text[j].isdigit():
                    raise ParseError("expected digits after '/'", j)
                while j < n and text[j].isdigit():
                    j += 1
                value = Fraction(int(text[start:i]), int(text[i + 1 : j]))
                i = j
            else:
                value = Fraction(text[start:i])
            tokens.append((_NUM, value, start))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append((_IDENT, text[start:i], start))
            continue
        if ch in "+-*^();":
            tokens.append((_OP, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append((_END, "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, variables):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = tuple(variables)
        if "i" in self.variables:
            raise ValueError("'i' is reserved for the imaginary unit")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.arity = len(self.variables)
        self.index = {name: j for j, name in enumerate(self.variables)}

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != _OP or value != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.advance()

    def parse_map(self):
        components = [self.parse_expr()]
        while self.peek()[:2] == (_OP, ";"):
            self.advance()
            components.append(self.parse_expr())
        kind, _, pos = self.peek()
        if kind != _END:
            raise ParseError("unexpected trailing input", pos)
        return components

    def parse_expr(self) -> MPoly:
        kind, value, _ = self.peek()
        negate = False
        if kind == _OP and value in "+-":
            negate = value == "-"
            self.advance()
        acc = self.parse_term()
        if negate:
            acc = -acc
        while True:
            kind, value, _ = self.peek()
            if kind == _OP and value in "+-":
                self.advance()
                term = self.parse_term()
                acc = acc - term if value == "-" else acc + term
            else:
                return acc

    def parse_term(self) -> MPoly:
        acc = self.parse_factor()
        while True:
            kind, value, _ = self.peek()
            if kind == _OP and value == "*":
                self.advance()
                acc = acc * self.parse_factor()
            elif kind in (_NUM, _IDENT) or (kind == _OP and value == "("):
                acc = acc * self.parse_factor()
            else:
                return acc

    def parse_factor(self) -> MPoly:
        base = self.parse_base()
        kind, value, pos = self.peek()
        if kind == _OP and value == "^":
            self.advance()
            kind, value, pos = self.peek()
            if kind != _NUM:
                raise ParseError("exponent must be a non-negative integer", pos)
            if value.denominator != 1 or value < 0:
                raise ParseError("exponent must be a non-negative integer", pos)
            self.advance()
            return base ** int(value)
        return base

    def parse_base(self) -> MPoly:
        kind, value, pos = self.advance()
        if kind == _NUM:
            return MPoly.const(self.arity, GaussRat.of(value))
        if kind == _IDENT:
            if value == "i":
                return MPoly.const(self.arity, GaussRat.I)
            if value not in self.index:
                raise ParseError(f"unknown identifier {value!r}", pos)
            return MPoly.variable(self.arity, self.index[value])
        if kind == _OP and value == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {value!r}", pos)


def parse_poly(text: str, variables) -> MPoly:
    """Parse a single polynomial over the named variables."""
    parser = _Parser(text, variables)
    components = parser.parse_map()
    if len(components) != 1:
        raise ParseError("expected a single polynomial, found ';'", 0)
    return components[0]


def parse_poly_map(text: str, variables) -> PolyMap:
    """Parse a semicolon-separated list of polynomials into a map."""
    parser = _Parser(text, variables)
    components = parser.parse_map()
    return PolyMap(tuple(variables), tuple(components))


# -- canonical printing ----------------------------------------------------


def _format_rational(q: Fraction) -> str:
    return str(q) if q.denominator != 1 else str(q.numerator)


def _format_coeff(c: GaussRat) -> str:
    """Render a Gaussian rational so that it reparses to the same value."""
    if not c.im:
        return _format_rational(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_format_rational(c.im)}i"
    re = _format_rational(c.re)
    im = abs(c.im)
    imtxt = "i" if im == 1 else f"{_format_rational(im)}i"
    sign = "+" if c.im > 0 else "-"
    return f"({re} {sign} {imtxt})"


def _format_monomial(mono, variables) -> str:
    parts = []
    for name, e in zip(variables, mono):
        if e == 1:
            parts.append(name)
        elif e >= 2:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: MPoly, variables) -> str:
    """Canonical text: graded-lex descending terms, explicit '*' and '^'."""
    if len(variables) != p.arity:
        raise ValueError("variable list does not match arity")
    if p.is_zero():
        return "0"
    pieces = []
    for mono in sorted(p.terms, key=grlex_key, reverse=True):
        c = p.terms[mono]
        if not isinstance(c, GaussRat):
            c = GaussRat.from_value(c)
        mono_txt = _format_monomial(mono, variables)
        txt = _format_coeff(c)
        negative = txt.startswith("-") and not txt.startswith("(")
        if negative:
            txt = txt[1:]
        if mono_txt:
            if txt == "1":
                txt = mono_txt
            elif txt == "i":
                txt = f"i*{mono_txt}"
            else:
                txt = f"{txt}*{mono_txt}"
        if not pieces:
            pieces.append(f"-{txt}" if negative else txt)
        else:
            pieces.append(f"- {txt}" if negative else f"+ {txt}")
    return " ".join(pieces)


def format_poly_map(pmap: PolyMap) -> str:
    return "; ".join(format_poly(c, pmap.variables) for c in pmap.components)
