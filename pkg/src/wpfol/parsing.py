"""Text grammar for polynomials and polynomial 1-forms.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/")? unary)*        juxtaposition multiplies
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | "i" | VAR | DIFF | "(" expr ")"

VAR is x0, x1, x2 (or x, y on a chart), DIFF is dx0, dx1, dx2 (or dx, dy).
Division is allowed by constants only. ``**`` is accepted for ``^`` and the
Unicode minus sign for ``-``.
"""

from __future__ import annotations

import re
from typing import List, Optional, Sequence, Tuple

from .poly import QHPoly
from .scalars import GaussRat, I

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str, expected: Sequence[str] = ()):
        self.position = position
        self.text = text
        self.expected = tuple(expected)
        caret = " " * position + "^"
        exp = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at position {position}{exp}\n  {text}\n  {caret}")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    text = text.replace("−", "-").replace("·", "*")
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Val:
    """A polynomial 0-form part plus optional differential coefficients."""

    __slots__ = ("poly", "diffs")

    def __init__(self, poly: QHPoly, diffs: Optional[List[QHPoly]] = None):
        self.poly = poly
        self.diffs = diffs

    def is_form(self) -> bool:
        return self.diffs is not None


class _Parser:
    def __init__(self, text: str, weights, var_names: Sequence[str], diff_names: Sequence[str]):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0
        self.weights = tuple(weights)
        self.vars = {name: i for i, name in enumerate(var_names)}
        self.diff_names = {name: i for i, name in enumerate(diff_names)}
        self.zero = QHPoly.zero(self.weights)

    # helpers
    def peek(self):
        return self.tokens[self.k]

    def take(self):
        t = self.tokens[self.k]
        self.k += 1
        return t

    def error(self, msg, expected=()):
        _, _, pos = self.peek()
        raise ParseError(msg, pos, self.text, expected)

    def starts_atom(self) -> bool:
        kind, val, _ = self.peek()
        return kind in ("int", "name") or (kind == "op" and val == "(")

    # combinators
    def add(self, a: _Val, b: _Val, sign: int) -> _Val:
        if a.is_form() != b.is_form():
            if a.is_form() and not b.poly and not b.is_form():
                return a
            if b.is_form() and not a.poly and not a.is_form():
                return _Val(self.zero, [c * sign for c in b.diffs])
            self.error("cannot add a function and a 1-form")
        if a.is_form():
            return _Val(self.zero, [x + y * sign for x, y in zip(a.diffs, b.diffs)])
        return _Val(a.poly + b.poly * sign)

    def mul(self, a: _Val, b: _Val) -> _Val:
        if a.is_form() and b.is_form():
            self.error("product of two 1-forms is not supported")
        if a.is_form():
            return _Val(self.zero, [c * b.poly for c in a.diffs])
        if b.is_form():
            return _Val(self.zero, [a.poly * c for c in b.diffs])
        return _Val(a.poly * b.poly)

    def parse(self) -> _Val:
        v = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token", ["operator", "end of input"])
        return v

    def expr(self) -> _Val:
        v = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                v = self.add(v, self.term(), 1 if val == "+" else -1)
            else:
                return v

    def term(self) -> _Val:
        v = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                v = self.mul(v, self.unary())
            elif kind == "op" and val == "/":
                self.take()
                pos = self.peek()[2]
                d = self.unary()
                if d.is_form() or not d.poly.is_constant() or not d.poly:
                    raise ParseError("division only by nonzero constants", pos, self.text)
                c = d.poly.constant_value().inverse()
                v = _Val(v.poly * c, [x * c for x in v.diffs] if v.is_form() else None)
            elif self.starts_atom():
                v = self.mul(v, self.unary())
            else:
                return v

    def unary(self) -> _Val:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            v = self.unary()
            if val == "-":
                return _Val(-v.poly, [-c for c in v.diffs] if v.is_form() else None)
            return v
        return self.power()

    def power(self) -> _Val:
        v = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.peek()
            if kind == "op" and val == "(":
                self.take()
                kind, val, pos = self.take()
                if kind != "int":
                    raise ParseError("exponent must be a nonnegative integer", pos, self.text, ["integer"])
                if self.take()[1] != ")":
                    self.k -= 1
                    self.error("missing ')'", [")"])
            elif kind == "int":
                self.take()
            else:
                self.error("exponent must be a nonnegative integer", ["integer"])
            if v.is_form():
                raise ParseError("cannot raise a 1-form to a power", pos, self.text)
            return _Val(v.poly ** int(val))
        return v

    def atom(self) -> _Val:
        kind, val, pos = self.take()
        if kind == "int":
            return _Val(QHPoly.const(self.weights, int(val)))
        if kind == "name":
            if val == "i":
                return _Val(QHPoly.const(self.weights, I))
            if val in self.vars:
                return _Val(QHPoly.var(self.weights, self.vars[val]))
            if val in self.diff_names:
                diffs = [self.zero] * len(self.diff_names)
                diffs[self.diff_names[val]] = QHPoly.const(self.weights, 1)
                return _Val(self.zero, diffs)
            expected = list(self.vars) + list(self.diff_names) + ["i"]
            raise ParseError(f"unknown identifier {val!r}", pos, self.text, expected)
        if kind == "op" and val == "(":
            v = self.expr()
            if self.peek()[1] != ")" or self.peek()[0] != "op":
                self.error("missing ')'", [")"])
            self.take()
            return v
        self.k -= 1
        self.error("unexpected token", ["number", "variable", "("])


def _names(nvars: int):
    if nvars == 3:
        return ("x0", "x1", "x2"), ("dx0", "dx1", "dx2")
    if nvars == 2:
        return ("x", "y"), ("dx", "dy")
    raise ValueError("only 2- or 3-variable rings are supported")


def parse_polynomial(text: str, weights) -> QHPoly:
    weights = tuple(weights)
    names, diffs = _names(len(weights))
    v = _Parser(text, weights, names, diffs).parse()
    if v.is_form():
        raise ParseError("expected a polynomial, found a 1-form", 0, text)
    return v.poly


def parse_form_coefficients(text: str, weights) -> List[QHPoly]:
    """Coefficients of dx_i in a 1-form expression (no validation)."""
    weights = tuple(weights)
    names, diffs = _names(len(weights))
    v = _Parser(text, weights, names, diffs).parse()
    if not v.is_form():
        if v.poly:
            raise ParseError("expected a 1-form, found a polynomial", 0, text)
        return [QHPoly.zero(weights)] * len(weights)
    return v.diffs


def parse_gaussrat(text: str) -> GaussRat:
    """Scalar in the forms ``a``, ``a/b``, ``a+b*i`` (any constant expression)."""
    p = parse_polynomial(text, (1, 1, 1))
    if not p.is_constant():
        raise ValueError(f"not a constant: {text!r}")
    return p.constant_value()


def parse_point(text: str) -> Tuple[GaussRat, ...]:
    """Colon- or comma-separated coordinates, e.g. ``1:1:1`` or ``0,1/2``."""
    parts = re.split(r"[:,]", text.strip().strip("[]()"))
    return tuple(parse_gaussrat(p) for p in parts)
