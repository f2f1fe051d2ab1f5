"""The symmetric algebra Sym(g) in the monomial basis, plus its seminorms.

A monomial is an exponent vector ``a``; ``e^a`` denotes the symmetric product
e_1^{a_1} v ... v e_n^{a_n}, so that e_1 v e_2 is a single term with
coefficient 1.  Coefficients are HbarScalars.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import LieAlgebraSpec
from .errors import AlgebraMismatch, DimensionMismatch, StarQuantError
from .scalars import GaussianRational, HbarScalar, hbar_eval

Exp = tuple  # exponent vector


def content(word: Sequence[int], n: int) -> Exp:
    a = [0] * n
    for letter in word:
        a[letter] += 1
    return tuple(a)


def letters(a: Exp) -> tuple:
    """The sorted word with content ``a``."""
    return tuple(i for i, k in enumerate(a) for _ in range(k))


def n_words(a: Exp) -> int:
    """Number of distinct words with content ``a`` (multinomial coefficient)."""
    out = math.factorial(sum(a))
    for k in a:
        out //= math.factorial(k)
    return out


def distinct_words(a: Exp):
    """All distinct words with content ``a`` in lexicographic order."""
    n = len(a)
    k = sum(a)
    counts = list(a)
    word = []

    def rec():
        if len(word) == k:
            yield tuple(word)
            return
        for i in range(n):
            if counts[i]:
                counts[i] -= 1
                word.append(i)
                yield from rec()
                word.pop()
                counts[i] += 1

    yield from rec()


def _add_into(acc: dict, key, value: HbarScalar):
    cur = acc.get(key)
    new = value if cur is None else cur + value
    if new.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = new


class SymTensor:
    """Sparse element of Sym(g_C) with coefficients in Q(i)[hbar]."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebraSpec, terms: Mapping | None = None):
        self.algebra = algebra
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(x) for x in exp)
            if len(exp) != algebra.dim or min(exp, default=0) < 0:
                raise DimensionMismatch(f"bad exponent vector {exp} for dim {algebra.dim}")
            _add_into(clean, exp, HbarScalar.coerce(coeff))
        self.terms = clean

    @classmethod
    def _raw(cls, algebra, terms: dict) -> "SymTensor":
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj.terms = terms
        return obj

    @classmethod
    def one(cls, algebra) -> "SymTensor":
        return cls(algebra, {(0,) * algebra.dim: 1})

    @classmethod
    def scalar(cls, algebra, s) -> "SymTensor":
        return cls(algebra, {(0,) * algebra.dim: s})

    @classmethod
    def generator(cls, algebra, i: int, coeff=1) -> "SymTensor":
        exp = [0] * algebra.dim
        exp[i] = 1
        return cls(algebra, {tuple(exp): coeff})

    @classmethod
    def monomial(cls, algebra, exp, coeff=1) -> "SymTensor":
        return cls(algebra, {tuple(exp): coeff})

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def degree(self) -> int:
        """Top symmetric degree; -1 for zero."""
        return max((sum(a) for a in self.terms), default=-1)

    @property
    def hbar_degree(self) -> int:
        return max((c.degree for c in self.terms.values()), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous_part(self, k: int) -> "SymTensor":
        return SymTensor._raw(self.algebra, {a: c for a, c in self.terms.items() if sum(a) == k})

    def homogeneous_parts(self) -> dict:
        parts: dict = {}
        for a, c in self.terms.items():
            parts.setdefault(sum(a), {})[a] = c
        return {k: SymTensor._raw(self.algebra, t) for k, t in sorted(parts.items())}

    def is_hbar_free(self) -> bool:
        return all(c.degree <= 0 for c in self.terms.values())

    def _check(self, other: "SymTensor"):
        if not isinstance(other, SymTensor):
            raise TypeError(f"expected SymTensor, got {type(other).__name__}")
        if self.algebra != other.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            _add_into(out, a, c)
        return SymTensor._raw(self.algebra, out)

    def __neg__(self):
        return SymTensor._raw(self.algebra, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "SymTensor":
        s = HbarScalar.coerce(s)
        if s.is_zero():
            return SymTensor._raw(self.algebra, {})
        out = {}
        for a, c in self.terms.items():
            v = c * s
            if not v.is_zero():
                out[a] = v
        return SymTensor._raw(self.algebra, out)

    def __mul__(self, other):
        if isinstance(other, SymTensor):
            return sym_product(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other):
        if isinstance(other, SymTensor):
            return self.algebra == other.algebra and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def map_coeffs(self, f: Callable) -> "SymTensor":
        out = {}
        for a, c in self.terms.items():
            v = f(c)
            if not v.is_zero():
                out[a] = v
        return SymTensor._raw(self.algebra, out)

    def __repr__(self):
        return f"SymTensor({self.to_string()})"

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a in sorted(self.terms, key=lambda a: (sum(a), tuple(-x for x in a))):
            mono = "*".join(
                (name if k == 1 else f"{name}^{k}")
                for name, k in zip(self.algebra.names, a) if k)
            coeff = str(self.terms[a])
            if not mono:
                parts.append(f"({coeff})")
            elif coeff == "1":
                parts.append(mono)
            else:
                parts.append(f"({coeff})*{mono}")
        return " + ".join(parts)


class TensorWordExpr:
    """Sparse element of the tensor algebra T(g_C): word -> HbarScalar."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebraSpec, terms: Mapping | None = None):
        self.algebra = algebra
        clean = {}
        for w, coeff in (terms or {}).items():
            w = tuple(int(x) for x in w)
            if any(not 0 <= x < algebra.dim for x in w):
                raise DimensionMismatch(f"word {w} has letters outside 0..{algebra.dim - 1}")
            _add_into(clean, w, HbarScalar.coerce(coeff))
        self.terms = clean

    def __eq__(self, other):
        if isinstance(other, TensorWordExpr):
            return self.algebra == other.algebra and self.terms == other.terms
        return NotImplemented


def symmetrize(t: TensorWordExpr) -> SymTensor:
    """Project onto symmetric tensors; each word maps to the monomial of its content."""
    out: dict = {}
    n = t.algebra.dim
    for w, c in t.terms.items():
        _add_into(out, content(w, n), c)
    return SymTensor._raw(t.algebra, out)


def include(p: SymTensor) -> TensorWordExpr:
    """Canonical inclusion Sym(g) -> T(g): e^a -> average of the distinct words of content a."""
    out: dict = {}
    for a, c in p.terms.items():
        share = c / n_words(a)
        for w in distinct_words(a):
            _add_into(out, w, share)
    obj = TensorWordExpr.__new__(TensorWordExpr)
    obj.algebra = p.algebra
    obj.terms = out
    return obj


def sym_product(p: SymTensor, q: SymTensor) -> SymTensor:
    p._check(q)
    out: dict = {}
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            _add_into(out, tuple(x + y for x, y in zip(a, b)), ca * cb)
    return SymTensor._raw(p.algebra, out)


def eval_monomial(a: Exp, point: Sequence) -> complex:
    out = 1
    for x, k in zip(point, a):
        if k:
            out = out * x ** k
    return out


def polarize(P: Callable, vectors: Sequence[Sequence]):
    """Symmetric k-linear form of a k-homogeneous P via the signed polarization sum.

    L(v_1..v_k) = (2^k k!)^{-1} sum_{eps in {+-1}^k} eps_1...eps_k P(sum eps_j v_j).
    Arithmetic follows the inputs: exact vectors and an exact P give an exact result.
    """
    k = len(vectors)
    if k == 0:
        return P(())
    dim = len(vectors[0])
    total = 0
    for signs in itertools.product((1, -1), repeat=k):
        point = [0] * dim
        for s, v in zip(signs, vectors):
            for idx in range(dim):
                point[idx] = point[idx] + s * v[idx]
        sign = math.prod(signs)
        total = total + sign * P(tuple(point))
    norm = 2 ** k * math.factorial(k)
    if isinstance(total, (int, Fraction)):
        return GaussianRational(Fraction(total, 1) / norm)
    if isinstance(total, GaussianRational):
        return total / norm
    return total / norm


def polynomial_evaluator(p: SymTensor, hbar: complex | None = None) -> Callable:
    """v -> sum_a coeff_a v^a.  Exact when hbar is None and p is hbar-free."""
    if hbar is None:
        if not p.is_hbar_free():
            raise StarQuantError("hbar-dependent tensor needs an explicit hbar to evaluate")
        items = [(a, c.coefficient(0)) for a, c in p.terms.items()]
    else:
        items = [(a, hbar_eval(c, hbar)) for a, c in p.terms.items()]

    def P(v):
        total = 0
        for a, c in items:
            total = total + c * eval_monomial(a, v)
        return total

    return P


def l1_proj_norm(p: SymTensor, hbar: complex = 1.0) -> dict:
    """Projective l1 tensor norm of each homogeneous part: degree -> sum of |coefficients|.

    Monomials e_{j_1} v ... v e_{j_k} all have projective l1 norm exactly 1,
    so the norm of a homogeneous part is the l1 norm of its monomial coefficients.
    """
    out: dict = {}
    for a, c in p.terms.items():
        k = sum(a)
        out[k] = out.get(k, 0.0) + abs(hbar_eval(c, hbar))
    return dict(sorted(out.items()))


def seminorm_Rc(p: SymTensor, R: float, c: float, hbar: complex = 1.0) -> float:
    """R-topology seminorm sum_k c^k (k!)^R ||p_k||."""
    total = 0.0
    for k, norm in l1_proj_norm(p, hbar).items():
        total += c ** k * math.factorial(k) ** R * norm
    return total


def exact_l1_proj_norm(p: SymTensor) -> dict:
    """Exact variant for hbar-free tensors with rational coefficients: degree -> Fraction."""
    out: dict = {}
    for a, c in p.terms.items():
        if c.degree > 0 or c.coefficient(0).im != 0:
            raise StarQuantError("exact norm needs hbar-free real rational coefficients")
        k = sum(a)
        out[k] = out.get(k, Fraction(0)) + abs(c.coefficient(0).re)
    return dict(sorted(out.items()))


def monomials_of_degree(n: int, k: int) -> Iterable[Exp]:
    """All exponent vectors of length n summing to k."""
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in monomials_of_degree(n - 1, k - first):
            yield (first,) + rest
