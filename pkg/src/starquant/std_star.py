"""Standard ordered quantization on T*G and its star product.

Phase space polynomials are finite sums phi (x) p with phi a coefficient
function on G and p a symmetric tensor.  The quantization of phi (x) e^a is
(hbar/i)^{|a|} times multiplication by phi after the symmetrized Lie
derivative Lie(omega(e^a)).

The star product is computed by the higher Leibniz factorization.  Grouping
the permutation sum by which sub-multiset b of the letters of a is used for
derivatives gives

    (phi (x) e^a) * (psi (x) q)
        = sum_{b <= a} (hbar/i)^{|b|} C(a, b) phi Lie(omega(e^b)) psi (x) (e^{a-b} *_Gutt q)

with C(a, b) = prod_i binom(a_i, b_i).  ``std_star_literal`` keeps the
ungrouped permutation sum as a reference.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .algebra import LieAlgebraSpec
from .errors import FiberConstantRequired, GroupDataMismatch, StarQuantError
from .group_functions import (GroupElementExpr, Jet, MatrixElementFunction, constant_function,
                              matrix_element_polynomial, polynomial_function, unipotent_rep)
from .gutt import gutt_star
from .pbw import kernel
from .scalars import GaussianRational, HbarScalar, hbar_eval, hbar_over_i
from .sym_tensor import SymTensor, _add_into, eval_monomial, letters


class FunctionSum:
    """Formal sum of coefficient functions; avoids growing direct-sum representations."""

    def __init__(self, terms: Sequence = ()):
        self.terms = []
        for t in terms:
            if isinstance(t, FunctionSum):
                self.terms.extend(t.terms)
            elif not t.is_zero():
                self.terms.append(t)

    def apply_word(self, word):
        return FunctionSum([t.apply_word(word) for t in self.terms])

    def apply_pbw(self, terms: Mapping):
        return FunctionSum([t.apply_pbw(terms) for t in self.terms])

    def scale(self, c):
        return FunctionSum([t.scale(c) for t in self.terms])

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        return False

    def __add__(self, other):
        return FunctionSum([self, other])

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, FunctionSum):
            return FunctionSum([a * b for a in self.terms for b in other.terms])
        return FunctionSum([t * other for t in self.terms])

    def __rmul__(self, other):
        return FunctionSum([other * t for t in self.terms])

    def __call__(self, g: GroupElementExpr | None = None) -> complex:
        return sum((complex(t(g)) if not isinstance(t, Jet) else t.value(()) for t in self.terms), 0j)


def _fn_key(fn):
    return fn.key() if hasattr(fn, "key") else ("obj", id(fn))


class PhaseSpacePoly:
    """sum_i phi_i (x) p_i with terms sharing a coefficient function merged."""

    def __init__(self, algebra: LieAlgebraSpec, terms: Sequence = ()):
        self.algebra = algebra
        merged: dict = {}
        for fn, sym in terms:
            if sym.algebra != algebra or fn.algebra != algebra:
                raise GroupDataMismatch("phase space terms over different algebras")
            if sym.is_zero() or fn.is_zero():
                continue
            key = _fn_key(fn)
            if key in merged:
                merged[key] = (merged[key][0], merged[key][1] + sym)
            else:
                merged[key] = (fn, sym)
        self.terms = [(fn, sym) for fn, sym in merged.values() if not sym.is_zero()]

    @classmethod
    def of(cls, fn, sym: SymTensor) -> "PhaseSpacePoly":
        return cls(sym.algebra, [(fn, sym)])

    @classmethod
    def fiber(cls, sym: SymTensor) -> "PhaseSpacePoly":
        """1 (x) sym."""
        return cls(sym.algebra, [(constant_function(sym.algebra), sym)])

    @classmethod
    def function(cls, fn) -> "PhaseSpacePoly":
        """fn (x) 1."""
        return cls(fn.algebra, [(fn, SymTensor.one(fn.algebra))])

    def __add__(self, other: "PhaseSpacePoly") -> "PhaseSpacePoly":
        if self.algebra != other.algebra:
            raise GroupDataMismatch("phase space polynomials over different algebras")
        return PhaseSpacePoly(self.algebra, self.terms + other.terms)

    def __neg__(self):
        return PhaseSpacePoly(self.algebra, [(fn, -sym) for fn, sym in self.terms])

    def __sub__(self, other):
        return self + (-other)

    @property
    def fiber_degree(self) -> int:
        return max((sym.degree for _, sym in self.terms), default=-1)

    def evaluate(self, g: GroupElementExpr | None, mu: Sequence[complex], hbar: complex) -> complex:
        """Value at the cotangent point (g, mu) for a numeric hbar."""
        total = 0j
        for fn, sym in self.terms:
            fval = fn.value(()) if isinstance(fn, Jet) else fn(g)
            sval = sum(hbar_eval(c, hbar) * eval_monomial(a, mu) for a, c in sym.terms.items())
            total += complex(fval) * sval
        return total

    def __repr__(self):
        return f"PhaseSpacePoly({len(self.terms)} terms)"


def _exact_hbar_value(s: HbarScalar, hbar):
    out = GaussianRational(0)
    for c in reversed(s.coeffs):
        out = out * hbar + c
    return out


def _scalar_at(s: HbarScalar, hbar):
    if isinstance(hbar, (int, Fraction, GaussianRational)):
        return _exact_hbar_value(s, GaussianRational.coerce(hbar))
    return hbar_eval(s, hbar)


def rho_std_apply(P: PhaseSpacePoly, psi, hbar) -> FunctionSum:
    """Standard ordered operator of P applied to psi at a fixed hbar.

    An exact hbar (int, Fraction, GaussianRational) keeps exact matrix elements exact.
    """
    ker = kernel(P.algebra)
    out = []
    for fn, sym in P.terms:
        for a, c in sym.terms.items():
            weight = _scalar_at(c * hbar_over_i(sum(a)), hbar)
            if weight == 0:
                continue
            derived = psi.apply_pbw(ker.omega(a))
            if derived.is_zero():
                continue
            out.append((fn * derived).scale(weight))
    return FunctionSum(out)


def _sub_multisets(a: tuple):
    return itertools.product(*(range(x + 1) for x in a))


def _binom_multi(a, b) -> int:
    return math.prod(math.comb(x, y) for x, y in zip(a, b))


def std_star(P: PhaseSpacePoly, Q: PhaseSpacePoly) -> PhaseSpacePoly:
    if P.algebra != Q.algebra:
        raise GroupDataMismatch("star product of phase space polynomials over different algebras")
    alg = P.algebra
    ker = kernel(alg)
    terms = []
    for fn, sym in P.terms:
        for a, ca in sym.terms.items():
            for b in _sub_multisets(a):
                rest = tuple(x - y for x, y in zip(a, b))
                weight = ca * hbar_over_i(sum(b)) * _binom_multi(a, b)
                left = SymTensor._raw(alg, {rest: weight})
                for psi, q in Q.terms:
                    derived = psi.apply_pbw(ker.omega(b)) if any(b) else psi
                    if derived.is_zero():
                        continue
                    terms.append((fn * derived, gutt_star(left, q)))
    return PhaseSpacePoly(alg, terms)


def std_star_literal(P: PhaseSpacePoly, Q: PhaseSpacePoly) -> PhaseSpacePoly:
    """Ungrouped permutation-sum form of the factorization; exponential cost, for testing only."""
    alg = P.algebra
    n = alg.dim
    terms = []
    for fn, sym in P.terms:
        for a, ca in sym.terms.items():
            word = letters(a)
            k = len(word)
            for p in range(k + 1):
                scale = ca * hbar_over_i(p) * Fraction(1, math.factorial(p) * math.factorial(k - p))
                for sigma in itertools.permutations(range(k)):
                    head = tuple(word[s] for s in sigma[:p])
                    tail = [0] * n
                    for s in sigma[p:]:
                        tail[word[s]] += 1
                    left = SymTensor._raw(alg, {tuple(tail): scale})
                    for psi, q in Q.terms:
                        derived = psi.apply_word(head)
                        if derived.is_zero():
                            continue
                        terms.append((fn * derived, gutt_star(left, q)))
    return PhaseSpacePoly(alg, terms)


def semiclassical_std(P: PhaseSpacePoly, Q: PhaseSpacePoly) -> PhaseSpacePoly:
    """{phi (x) e^a, psi (x) 1} = sum_i a_i phi Lie(e_i) psi (x) e^{a - delta_i}."""
    alg = P.algebra
    for _, q in Q.terms:
        if q.degree > 0:
            raise FiberConstantRequired("second factor must be constant along the fibers")
    terms = []
    for fn, sym in P.terms:
        for a, ca in sym.terms.items():
            for i, ai in enumerate(a):
                if not ai:
                    continue
                rest = list(a)
                rest[i] -= 1
                for psi, q in Q.terms:
                    c0 = q.terms.get((0,) * alg.dim)
                    derived = psi.apply_word((i,))
                    if c0 is None or derived.is_zero():
                        continue
                    terms.append((fn * derived, SymTensor._raw(alg, {tuple(rest): ca * c0 * ai})))
    return PhaseSpacePoly(alg, terms)


def hbar_coefficient_poly(P: PhaseSpacePoly, j: int) -> PhaseSpacePoly:
    out = []
    for fn, sym in P.terms:
        part = {a: HbarScalar.const(c.coefficient(j)) for a, c in sym.terms.items() if not c.coefficient(j).is_zero()}
        out.append((fn, SymTensor._raw(P.algebra, part)))
    return PhaseSpacePoly(P.algebra, out)


def semiclassical_from_commutator(P: PhaseSpacePoly, Q: PhaseSpacePoly) -> PhaseSpacePoly:
    """i times the hbar^1 coefficient of P*Q - Q*P."""
    comm = std_star(P, Q) - std_star(Q, P)
    first = hbar_coefficient_poly(comm, 1)
    return PhaseSpacePoly(P.algebra, [(fn, sym.scale(GaussianRational(0, 1))) for fn, sym in first.terms])


# --- abelian closed form -----------------------------------------------------


class AbelianPhasePoly:
    """sum c_{a,b} q^a p^b on T*R^n with hbar-polynomial coefficients."""

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        clean: dict = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(int(x) for x in a), tuple(int(x) for x in b)
            if len(a) != n or len(b) != n:
                raise StarQuantError(f"exponent vectors must have length {n}")
            _add_into(clean, (a, b), HbarScalar.coerce(c))
        self.terms = clean

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        res = AbelianPhasePoly(self.n)
        res.terms = out
        return res

    def __neg__(self):
        res = AbelianPhasePoly(self.n)
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, AbelianPhasePoly):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        qs = ["q"] if self.n == 1 else [f"q{j + 1}" for j in range(self.n)]
        ps = ["p"] if self.n == 1 else [f"p{j + 1}" for j in range(self.n)]
        parts = []
        for (a, b) in sorted(self.terms):
            mono = "*".join([f"{v}^{x}" if x > 1 else v for v, x in zip(qs + ps, a + b) if x])
            parts.append(f"({self.terms[(a, b)]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"AbelianPhasePoly({self.to_string()})"


LAMBDA_DEFAULT = HbarScalar.hbar(1, GaussianRational(0, 1))  # i * hbar


def _falling(x: int, k: int) -> int:
    return math.perm(x, k)


def std_star_abelian(F: AbelianPhasePoly, G: AbelianPhasePoly, lam: HbarScalar = LAMBDA_DEFAULT) -> AbelianPhasePoly:
    """F * G = sum_alpha lam^{|alpha|} / alpha! d_p^alpha F d_q^alpha G (terminating)."""
    if F.n != G.n:
        raise StarQuantError("abelian phase spaces of different dimension")
    out: dict = {}
    for (a1, b1), c1 in F.terms.items():
        for (a2, b2), c2 in G.terms.items():
            for alpha in itertools.product(*(range(min(x, y) + 1) for x, y in zip(b1, a2))):
                factor = Fraction(1)
                for al, x, y in zip(alpha, b1, a2):
                    factor *= Fraction(_falling(x, al) * _falling(y, al), math.factorial(al))
                a = tuple(x + y - al for x, y, al in zip(a1, a2, alpha))
                b = tuple(x - al + y for x, y, al in zip(b1, b2, alpha))
                _add_into(out, (a, b), c1 * c2 * lam ** sum(alpha) * factor)
    res = AbelianPhasePoly(F.n)
    res.terms = out
    return res


def abelian_to_phase(F: AbelianPhasePoly, algebra: LieAlgebraSpec, size: int | None = None) -> PhaseSpacePoly:
    """Realize q^a p^b data as unipotent matrix elements (x) fiber monomials.

    The fiber coordinate p_j is the basis element e_j and q^a is a matrix element of
    a shared unipotent representation, so equal position parts merge.
    """
    if algebra.dim != F.n or not algebra.is_abelian():
        raise GroupDataMismatch("abelian phase data needs the abelian algebra of matching dimension")
    if size is None:
        size = 1 + max((max(a, default=0) for a, _ in F.terms), default=0)
    rep = unipotent_rep(F.n, max(size, 1))
    rep.algebra = algebra
    grouped: dict = {}
    for (a, b), c in F.terms.items():
        for j, x in enumerate(c.coeffs):
            if not x.is_zero():
                grouped.setdefault((b, j), {})[a] = x
    terms = []
    for (b, j), poly in grouped.items():
        fn = polynomial_function(rep, max(size, 1), poly)
        terms.append((fn, SymTensor._raw(algebra, {b: HbarScalar.hbar(j)})))
    return PhaseSpacePoly(algebra, terms)


def phase_to_abelian(P: PhaseSpacePoly) -> AbelianPhasePoly:
    """Exact inverse of ``abelian_to_phase`` for exact unipotent matrix elements."""
    out: dict = {}
    for fn, sym in P.terms:
        if not isinstance(fn, MatrixElementFunction):
            raise StarQuantError("only exact matrix elements convert back to polynomials")
        poly = matrix_element_polynomial(fn)
        for a, x in poly.items():
            for b, c in sym.terms.items():
                _add_into(out, (a, b), c * GaussianRational.coerce(x))
    res = AbelianPhasePoly(P.algebra.dim)
    res.terms = out
    return res


# --- operator consistency ------------------------------------------------------


@dataclass
class OperatorCheck:
    deviation: float
    samples: int
    worst_point: int
    lhs: list
    rhs: list


def operator_consistency_check(P: PhaseSpacePoly, Q: PhaseSpacePoly, psi: MatrixElementFunction,
                               points: Sequence[GroupElementExpr], hbar: complex) -> OperatorCheck:
    """Compare rho(P*Q) psi with rho(P) rho(Q) psi at the sample points.

    The deviation is max |L - R| over max |R| across the samples.
    """
    lhs_fn = rho_std_apply(std_star(P, Q), psi, hbar)
    rhs_fn = rho_std_apply(P, rho_std_apply(Q, psi, hbar), hbar)
    lhs = [lhs_fn(g) for g in points]
    rhs = [rhs_fn(g) for g in points]
    diffs = [abs(x - y) for x, y in zip(lhs, rhs)]
    scale = max((abs(y) for y in rhs), default=0.0)
    worst = int(np.argmax(diffs)) if diffs else -1
    dev = max(diffs, default=0.0) / scale if scale else max(diffs, default=0.0)
    return OperatorCheck(float(dev), len(points), worst, lhs, rhs)

