"""A small expression language for symmetric tensors and abelian phase space polynomials.

Grammar::

    expr   := ["-"] term (("+" | "-") term)*
    term   := power (("*" | "/") power)*
    power  := atom ("^" INT)?
    atom   := NUMBER | "i" | "hbar" | NAME | "(" expr ")" | "-" atom

NUMBER is an integer, a decimal ("0.25") or a ratio ("3/4" parses as 3 / 4).
``i`` and ``hbar`` are reserved; every other identifier must be a variable
name.  Division is only allowed by nonzero constants free of hbar.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .algebra import LieAlgebraSpec
from .errors import ParseError
from .scalars import GaussianRational, HbarScalar
from .sym_tensor import SymTensor, _add_into

RESERVED = ("i", "hbar")

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} at position {pos}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
    return out


class _Poly:
    """Sparse polynomial exponent -> HbarScalar used while parsing."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = terms or {}

    @classmethod
    def const(cls, n: int, c: HbarScalar):
        return cls(n, {} if c.is_zero() else {(0,) * n: c})

    def add(self, other, sign=1):
        out = dict(self.terms)
        for a, c in other.terms.items():
            _add_into(out, a, c if sign > 0 else -c)
        return _Poly(self.n, out)

    def mul(self, other):
        out: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                _add_into(out, tuple(x + y for x, y in zip(a, b)), ca * cb)
        return _Poly(self.n, out)

    def as_constant(self):
        if not self.terms:
            return HbarScalar()
        if set(self.terms) != {(0,) * self.n}:
            return None
        return self.terms[(0,) * self.n]


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        for r in RESERVED:
            if r in names:
                raise ParseError(f"variable name {r!r} is reserved")
        self.tokens = _tokenize(text)
        self.pos = 0
        self.names = list(names)
        self.n = len(names)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input")
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self) -> _Poly:
        if not self.tokens:
            raise ParseError("empty expression")
        out = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"unexpected token {self.peek()[1]!r}")
        return out

    def expr(self) -> _Poly:
        if self.peek()[1] == "-":
            self.take()
            out = _Poly(self.n).add(self.term(), -1)
        else:
            out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            out = out.add(self.term(), 1 if op == "+" else -1)
        return out

    def term(self) -> _Poly:
        out = self.power()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.power()
            if op == "*":
                out = out.mul(rhs)
            else:
                c = rhs.as_constant()
                if c is None or c.is_zero() or c.degree > 0:
                    raise ParseError("can only divide by a nonzero constant without hbar")
                inv = GaussianRational(1) / c.coefficient(0)
                out = out.mul(_Poly.const(self.n, HbarScalar.const(inv)))
        return out

    def power(self) -> _Poly:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val = self.take()
            if kind != "num" or not val.isdigit():
                raise ParseError("exponent must be a nonnegative integer")
            out = _Poly.const(self.n, HbarScalar.const(1))
            for _ in range(int(val)):
                out = out.mul(base)
            return out
        return base

    def atom(self) -> _Poly:
        kind, val = self.take()
        if kind == "num":
            return _Poly.const(self.n, HbarScalar.const(Fraction(val)))
        if kind == "name":
            if val == "i":
                return _Poly.const(self.n, HbarScalar.const(GaussianRational(0, 1)))
            if val == "hbar":
                return _Poly.const(self.n, HbarScalar.hbar(1))
            if val not in self.names:
                raise ParseError(f"unknown name {val!r}; expected one of {self.names}")
            a = [0] * self.n
            a[self.names.index(val)] = 1
            return _Poly(self.n, {tuple(a): HbarScalar.const(1)})
        if val == "(":
            out = self.expr()
            self.take(")")
            return out
        if val == "-":
            return _Poly(self.n).add(self.atom(), -1)
        raise ParseError(f"unexpected token {val!r}")


def parse_polynomial(text: str, names: Sequence[str]) -> dict:
    """Parse into {exponent vector: HbarScalar} over the given variable names."""
    return _Parser(text, names).parse().terms


def parse_tensor(text: str, algebra: LieAlgebraSpec) -> SymTensor:
    return SymTensor._raw(algebra, parse_polynomial(text, algebra.names))


def abelian_variable_names(n: int) -> list:
    """q, p for n = 1; q1..qn, p1..pn otherwise."""
    if n == 1:
        return ["q", "p"]
    return [f"q{j + 1}" for j in range(n)] + [f"p{j + 1}" for j in range(n)]


def parse_abelian(text: str, n: int):
    from .std_star import AbelianPhasePoly

    terms = parse_polynomial(text, abelian_variable_names(n))
    out = AbelianPhasePoly(n)
    out.terms = {(e[:n], e[n:]): c for e, c in terms.items()}
    return out
