"""Universal enveloping algebra U(g) in the increasing-index PBW basis.

The exponent vector ``b`` stands for the ordered monomial e_1^{b_1} ... e_n^{b_n}.
Two independent multiplication paths exist:

* ``normal_order`` rewrites words literally, swapping one descending adjacent
  pair e_j e_i (j > i) into e_i e_j + [e_j, e_i] per step;
* the memoized kernel multiplies by one generator at a time and is what the
  star products use.

The symmetrization map omega (the hbar-free part of the standard ordered
quantization) and its inverse live here too.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .algebra import LieAlgebraSpec
from .errors import AlgebraMismatch, DimensionMismatch
from .scalars import HbarScalar
from .sym_tensor import SymTensor, _add_into, content, letters

# --- rational kernel --------------------------------------------------------


def _acc(out: dict, key, value: Fraction):
    v = out.get(key, 0) + value
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class _Kernel:
    """Memoized exact arithmetic in U(g) with Fraction coefficients."""

    def __init__(self, algebra: LieAlgebraSpec):
        self.algebra = algebra
        self.n = algebra.dim
        self._left: dict = {}
        self._mono: dict = {}
        self._omega: dict = {}
        self._gutt: dict = {}

    def leftmul(self, i: int, b: tuple) -> dict:
        """e_i * e^b as {ordered exponent: Fraction}."""
        key = (i, b)
        hit = self._left.get(key)
        if hit is not None:
            return hit
        j = next((t for t, x in enumerate(b) if x), None)
        if j is None or i <= j:
            bb = list(b)
            bb[i] += 1
            res = {tuple(bb): Fraction(1)}
        else:
            # e_i e_j rest = e_j (e_i rest) + [e_i, e_j] rest
            rest = list(b)
            rest[j] -= 1
            rest = tuple(rest)
            res = {}
            for m, c in self.leftmul(i, rest).items():
                for m2, c2 in self.leftmul(j, m).items():
                    _acc(res, m2, c * c2)
            for k, x in self.algebra.bracket_basis(i, j):
                for m2, c2 in self.leftmul(k, rest).items():
                    _acc(res, m2, x * c2)
        self._left[key] = res
        return res

    def apply_word(self, word, target: Mapping) -> dict:
        """Left-multiply ``target`` by the word's letters (rightmost letter first)."""
        cur = dict(target)
        for i in reversed(word):
            nxt: dict = {}
            for m, c in cur.items():
                for m2, c2 in self.leftmul(i, m).items():
                    _acc(nxt, m2, c * c2)
            cur = nxt
        return cur

    def mono_mul(self, a: tuple, b: tuple) -> dict:
        key = (a, b)
        hit = self._mono.get(key)
        if hit is None:
            hit = self.apply_word(letters(a), {b: Fraction(1)})
            self._mono[key] = hit
        return hit

    def multiply(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for m, c in self.mono_mul(a, b).items():
                    _acc(out, m, ca * cb * c)
        return out

    def omega(self, a: tuple) -> dict:
        """Symmetrization of e^a: average over the distinct words of content a.

        Uses omega(a) = (1/k) sum_i a_i e_i * omega(a - delta_i), which follows by
        splitting the words according to their first letter.
        """
        hit = self._omega.get(a)
        if hit is not None:
            return hit
        k = sum(a)
        if k <= 1:
            res = {a: Fraction(1)}
        else:
            res = {}
            for i, ai in enumerate(a):
                if not ai:
                    continue
                sub = list(a)
                sub[i] -= 1
                w = Fraction(ai, k)
                for m, c in self.omega(tuple(sub)).items():
                    for m2, c2 in self.leftmul(i, m).items():
                        _acc(res, m2, w * c * c2)
        self._omega[a] = res
        return res

    def omega_inv(self, u: Mapping) -> dict:
        """Inverse of omega by peeling off the top filtration degree."""
        u = dict(u)
        out: dict = {}
        while u:
            top = max(sum(m) for m in u)
            lead = [(m, c) for m, c in u.items() if sum(m) == top]
            for m, c in lead:
                _acc(out, m, c)
                for m2, c2 in self.omega(m).items():
                    _acc(u, m2, -c * c2)
        return out

    def gutt_monomials(self, a: tuple, b: tuple) -> dict:
        """omega^{-1}(omega(e^a) omega(e^b)), hbar-free."""
        key = (a, b)
        hit = self._gutt.get(key)
        if hit is None:
            hit = self.omega_inv(self.multiply(self.omega(a), self.omega(b)))
            self._gutt[key] = hit
        return hit


_KERNELS: dict = {}


def kernel(algebra: LieAlgebraSpec) -> _Kernel:
    k = _KERNELS.get(algebra)
    if k is None:
        k = _KERNELS[algebra] = _Kernel(algebra)
    return k


# --- public types -----------------------------------------------------------


class PBWElement:
    """Sparse element of U(g_C): ordered exponent vector -> HbarScalar."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebraSpec, terms: Mapping | None = None):
        self.algebra = algebra
        clean: dict = {}
        for b, c in (terms or {}).items():
            b = tuple(int(x) for x in b)
            if len(b) != algebra.dim or min(b, default=0) < 0:
                raise DimensionMismatch(f"bad exponent vector {b} for dim {algebra.dim}")
            _add_into(clean, b, HbarScalar.coerce(c))
        self.terms = clean

    @classmethod
    def _raw(cls, algebra, terms):
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj.terms = terms
        return obj

    @classmethod
    def from_rational(cls, algebra, terms: Mapping) -> "PBWElement":
        return cls._raw(algebra, {b: HbarScalar.const(c) for b, c in terms.items() if c})

    @property
    def degree(self) -> int:
        """Filtration degree; -1 for zero."""
        return max((sum(b) for b in self.terms), default=-1)

    def _check(self, other):
        if not isinstance(other, PBWElement):
            raise TypeError(f"expected PBWElement, got {type(other).__name__}")
        if self.algebra != other.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for b, c in other.terms.items():
            _add_into(out, b, c)
        return PBWElement._raw(self.algebra, out)

    def __neg__(self):
        return PBWElement._raw(self.algebra, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return pbw_multiply(self, other)

    def __eq__(self, other):
        if isinstance(other, PBWElement):
            return self.algebra == other.algebra and self.terms == other.terms
        return NotImplemented

    def __repr__(self):
        return f"PBWElement({ {b: str(c) for b, c in self.terms.items()} })"


def normal_order(algebra: LieAlgebraSpec, word, strategy: str = "leftmost") -> PBWElement:
    """Rewrite a word into PBW normal form by explicit adjacent swaps.

    ``strategy`` picks which descending pair to rewrite first in each word:
    "leftmost" or "rightmost".  Confluence means both give the same result.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    word = tuple(int(x) for x in word)
    if any(not 0 <= x < algebra.dim for x in word):
        raise DimensionMismatch(f"word {word} has letters outside 0..{algebra.dim - 1}")
    pending = {word: Fraction(1)}
    done: dict = {}
    while pending:
        w, c = pending.popitem()
        descents = [t for t in range(len(w) - 1) if w[t] > w[t + 1]]
        if not descents:
            _acc(done, content(w, algebra.dim), c)
            continue
        t = descents[0] if strategy == "leftmost" else descents[-1]
        j, i = w[t], w[t + 1]
        _acc(pending, w[:t] + (i, j) + w[t + 2:], c)
        for k, x in algebra.bracket_basis(j, i):
            _acc(pending, w[:t] + (k,) + w[t + 2:], c * x)
    return PBWElement.from_rational(algebra, done)


def pbw_multiply(u: PBWElement, v: PBWElement) -> PBWElement:
    u._check(v)
    ker = kernel(u.algebra)
    out: dict = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            cab = ca * cb
            for m, c in ker.mono_mul(a, b).items():
                _add_into(out, m, cab * c)
    return PBWElement._raw(u.algebra, out)


def pbw_symmetrize(p: SymTensor) -> PBWElement:
    """omega: e^a -> (1/k!) sum over permutations of the ordered product; coefficients pass through."""
    ker = kernel(p.algebra)
    out: dict = {}
    for a, c in p.terms.items():
        for m, x in ker.omega(a).items():
            _add_into(out, m, c * x)
    return PBWElement._raw(p.algebra, out)


def pbw_desymmetrize(u: PBWElement) -> SymTensor:
    """omega^{-1}: subtract omega of the leading symbol and recurse on lower degree."""
    ker = kernel(u.algebra)
    cur = dict(u.terms)
    out: dict = {}
    while cur:
        top = max(sum(m) for m in cur)
        lead = [(m, c) for m, c in cur.items() if sum(m) == top]
        for m, c in lead:
            _add_into(out, m, c)
            for m2, x in ker.omega(m).items():
                _add_into(cur, m2, -(c * x))
    return SymTensor._raw(u.algebra, out)


def word_element(algebra: LieAlgebraSpec, word) -> PBWElement:
    """Normal form of a word via the memoized kernel (fast path)."""
    ker = kernel(algebra)
    return PBWElement.from_rational(algebra, ker.apply_word(tuple(word), {(0,) * algebra.dim: Fraction(1)}))
