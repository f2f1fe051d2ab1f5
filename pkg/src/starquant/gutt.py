"""The Gutt (Lie algebra) star product on Sym(g_C) with exact hbar dependence.

For monomials e^a, e^b of degrees |a|, |b| put r = omega^{-1}(omega(e^a) omega(e^b))
and split r into homogeneous parts r_m.  Since the standard ordered
quantization of a degree-k tensor carries the factor (hbar/i)^k,

    e^a * e^b = sum_m (hbar/i)^{|a|+|b|-m} r_m,

and the product extends bilinearly.  Every coefficient is therefore a
polynomial in hbar of degree at most |a| + |b|.
"""
from __future__ import annotations

import math
from typing import Sequence

from .errors import DimensionMismatch
from .pbw import kernel
from .scalars import GaussianRational, HbarScalar, hbar_eval, hbar_over_i
from .sym_tensor import SymTensor, _add_into, eval_monomial, seminorm_Rc

_WEIGHTS = [hbar_over_i(j) for j in range(64)]


def _weight(j: int) -> HbarScalar:
    if j < len(_WEIGHTS):
        return _WEIGHTS[j]
    return hbar_over_i(j)


def gutt_star(p: SymTensor, q: SymTensor) -> SymTensor:
    p._check(q)
    ker = kernel(p.algebra)
    out: dict = {}
    for a, ca in p.terms.items():
        da = sum(a)
        for b, cb in q.terms.items():
            cab = ca * cb
            top = da + sum(b)
            for m, x in ker.gutt_monomials(a, b).items():
                _add_into(out, m, cab * (_weight(top - sum(m)) * x))
    return SymTensor._raw(p.algebra, out)


def hbar_coefficient(r: SymTensor, j: int) -> SymTensor:
    """The hbar^j coefficient of r as an hbar-free tensor."""
    out = {}
    for a, c in r.terms.items():
        x = c.coefficient(j)
        if not x.is_zero():
            out[a] = HbarScalar((x,))
    return SymTensor._raw(r.algebra, out)


def classical_limit(r: SymTensor) -> SymTensor:
    return hbar_coefficient(r, 0)


def poisson_bracket(p: SymTensor, q: SymTensor) -> SymTensor:
    """i * d/dhbar (p*q - q*p) at hbar = 0, computed by exact coefficient extraction."""
    comm = gutt_star(p, q) - gutt_star(q, p)
    return hbar_coefficient(comm, 1).scale(GaussianRational(0, 1))


def kks_bracket(p: SymTensor, q: SymTensor) -> SymTensor:
    """Linear Poisson bracket {F, G}(mu) = mu([dF, dG]) on Pol(g*) = Sym(g)."""
    p._check(q)
    alg = p.algebra
    n = alg.dim
    out: dict = {}
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            for i in range(n):
                if not a[i]:
                    continue
                for j in range(n):
                    if not b[j]:
                        continue
                    base = [x + y for x, y in zip(a, b)]
                    base[i] -= 1
                    base[j] -= 1
                    for k, x in alg.bracket_basis(i, j):
                        m = list(base)
                        m[k] += 1
                        _add_into(out, tuple(m), ca * cb * (a[i] * b[j] * x))
    return SymTensor._raw(alg, out)


def eval_on_dual(p: SymTensor, mu: Sequence[complex], hbar: complex = 1.0) -> complex:
    """Evaluate p as a polynomial on g* at mu, where mu(e_i) = mu[i]."""
    if len(mu) != p.dim:
        raise DimensionMismatch(f"dual point has {len(mu)} coordinates, algebra has {p.dim}")
    total = 0j
    for a, c in p.terms.items():
        total += hbar_eval(c, hbar) * eval_monomial(a, mu)
    return complex(total)


def seminorm_ratio_table(p: SymTensor, q: SymTensor, c_values, c_prime_values,
                         R: float = 1.0, hbar: complex = 1.0) -> list:
    """Rows (c, c', p_{R,c}(p*q) / (p_{R,c'}(p) p_{R,c'}(q))).

    Only tabulates empirical ratios; no universal constant is claimed.
    """
    prod = gutt_star(p, q)
    rows = []
    for c in c_values:
        lhs = seminorm_Rc(prod, R, c, hbar)
        for cp in c_prime_values:
            rhs = seminorm_Rc(p, R, cp, hbar) * seminorm_Rc(q, R, cp, hbar)
            rows.append((c, cp, lhs, rhs, lhs / rhs if rhs else math.inf))
    return rows
