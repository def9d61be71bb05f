"""A small expression parser shared by field elements, series and rational functions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | NAME | '(' expr ')' | 'O' '(' expr ')'

Evaluation is delegated to an algebra object providing ``const``, ``var``,
``big_o`` and the usual operators on its values.
"""

from __future__ import annotations

import re
from typing import Any, Callable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    """Malformed expression text."""


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"cannot tokenize at {text[pos:]!r}")
        num, name, sym = m.groups()
        if num is not None:
            out.append(("int", num))
        elif name is not None:
            out.append(("name", name))
        else:
            if sym not in "+-*/^()":
                raise ParseError(f"unexpected character {sym!r}")
            out.append(("sym", sym))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, const: Callable[[int], Any], var: Callable[[str], Any],
                 big_o: Callable[[Any], Any] | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.const = const
        self.var = var
        self.big_o = big_o

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, sym: str | None = None):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input")
        if sym is not None and tok != ("sym", sym):
            raise ParseError(f"expected {sym!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()[1]
            w = self.unary()
            v = v * w if op == "*" else v / w
        return v

    def unary(self):
        if self.peek() == ("sym", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            neg = False
            if self.peek() == ("sym", "-"):
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer")
            e = int(val)
            v = v ** (-e if neg else e)
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.const(int(val))
        if kind == "name":
            if val == "O" and self.peek() == ("sym", "(") and self.big_o is not None:
                self.take("(")
                inner = self.expr()
                self.take(")")
                return self.big_o(inner)
            return self.var(val)
        if val == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(f"unexpected {val!r}")


def parse_expression(text: str, const: Callable[[int], Any], var: Callable[[str], Any],
                     big_o: Callable[[Any], Any] | None = None):
    """Parse ``text`` evaluating atoms with ``const``/``var``/``big_o``."""
    return _Parser(text, const, var, big_o).parse()


def _field_var(field, name: str):
    if name == "z" and field.d > 1:
        return field.z
    raise ParseError(f"unknown symbol {name!r}")


def parse_field_element(text: str, field):
    """An element of F_q written in the generator z, e.g. ``2*z+1``."""
    v = parse_expression(text, lambda n: field.element(field.from_int(n)),
                         lambda name: _field_var(field, name))
    return v


def parse_series(text: str, field):
    """A Laurent series in u, e.g. ``1 + 2*u + O(u^5)``."""
    from .laurent import LaurentSeries

    def var(name):
        if name == "u":
            return LaurentSeries.monomial(field, field.one, 1)
        return LaurentSeries.monomial(field, _field_var(field, name), 0)

    def big_o(inner):
        if not inner.exact or len(inner.coeffs) != 1 or inner.coeffs[0] != 1:
            raise ParseError("O(...) takes a monomial u^k")
        return LaurentSeries.big_o(field, inner.val)

    return parse_expression(text, lambda n: LaurentSeries.monomial(field, n, 0),
                            var, big_o)


def parse_two_local(text: str, field):
    """An element of F_q((u))((t)), e.g. ``t*(1+u) + O(t^3)``."""
    from .laurent import LaurentSeries, TwoLocalElement

    def var(name):
        if name == "u":
            return TwoLocalElement.u(field)
        if name == "t":
            return TwoLocalElement.t(field)
        return TwoLocalElement.constant(field, _field_var(field, name))

    def big_o(inner):
        if not inner.is_fully_exact() or len(inner.coeffs) != 1:
            raise ParseError("O(...) takes a monomial u^i*t^j")
        s = inner.coeffs[0]
        if len(s.coeffs) != 1 or s.coeffs[0] != 1:
            raise ParseError("O(...) takes a monic monomial")
        if s.val == 0:
            return TwoLocalElement.big_o(field, inner.val)
        return TwoLocalElement.from_series(LaurentSeries.big_o(field, s.val), inner.val)

    return parse_expression(text, lambda n: TwoLocalElement.constant(field, n),
                            var, big_o)
