"""Coefficient functions on matrix Lie groups.

Two realizations of a function phi on G:

* ``MatrixElementFunction``: phi(g) = w^T B pi(g) v for a representation pi
  with differential rho.  Left-invariant derivatives act on the right vector:
  (Lie(alpha) phi)(g) = w^T B pi(g) rho_{alpha_1} ... rho_{alpha_k} v, where the
  word alpha means the operator Lie_{alpha_1} o ... o Lie_{alpha_k}.  The pairing
  is bilinear (no conjugation) so that extensions stay holomorphic.
* ``Jet``: the numbers (Lie(alpha) phi)(g0) for all words up to a fixed order.

Representations may carry exact matrices (ints, Fractions, GaussianRationals
in object arrays); then derivatives, sums and products stay exact and only
evaluation at group elements goes through floating point.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from scipy.linalg import expm

from .algebra import LieAlgebraSpec, catalog
from .errors import (DimensionMismatch, GroupDataMismatch, JetNotEvaluable, JetOrderExhausted,
                     NonNormalizableBasis, StarQuantError)
from .scalars import GaussianRational

REP_TOL = 1e-12

_EXACT_TYPES = (int, Fraction, GaussianRational)


def _exactify(x):
    """Exact scalar for x; integers stay Python ints because object-array arithmetic on them is fast."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return _exactify(Fraction(x))
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(isinstance(y, (str, int, Fraction)) for y in x):
        return GaussianRational(x[0], x[1])
    raise TypeError


def exact_array(data):
    """Object array of exact scalars, or None if some entry is not exact."""
    arr = np.asarray(data, dtype=object)
    flat = arr.reshape(-1)
    out = np.empty(flat.shape, dtype=object)
    try:
        for idx, x in enumerate(flat):
            if isinstance(x, np.generic):
                x = x.item()
            out[idx] = _exactify(x)
    except TypeError:
        return None
    return out.reshape(arr.shape)


def numeric_array(data) -> np.ndarray:
    arr = np.asarray(data)
    if arr.dtype == object:
        return np.array([complex(x) for x in arr.reshape(-1)], dtype=complex).reshape(arr.shape)
    return arr.astype(complex)


def _is_zero_vec(v) -> bool:
    if v.dtype == object:
        return all(x == 0 for x in v)
    return not np.any(v)


def op_norm(M: np.ndarray) -> float:
    return float(np.linalg.norm(numeric_array(M), 2))


class MatrixRep:
    """A finite-dimensional representation given by rho_i = d pi(e_i).

    Tensor products are kept lazy: they act on vectors by reshaping into
    matrices, and their group matrices factor as Kronecker products, so the
    d1*d2 square matrices are only built when something asks for ``rho``.
    """

    def __init__(self, algebra: LieAlgebraSpec, rho: Sequence, check: bool = True, tol: float = REP_TOL):
        if len(rho) != algebra.dim:
            raise DimensionMismatch(f"need {algebra.dim} matrices, got {len(rho)}")
        exact = [exact_array(m) for m in rho]
        self.algebra = algebra
        self._exact = tuple(exact) if all(m is not None for m in exact) else None
        self._rho = tuple(numeric_array(m) for m in rho)
        shapes = {m.shape for m in self._rho}
        if len(shapes) != 1 or len(next(iter(shapes))) != 2 or next(iter(shapes))[0] != next(iter(shapes))[1]:
            raise DimensionMismatch(f"rho matrices must be square and of one size, got {shapes}")
        self.d = self._rho[0].shape[0]
        self.is_exact = self._exact is not None
        self._parts = None
        self._tensor_cache: dict = {}
        self._group_cache: dict = {}
        if check:
            self.check(tol)

    @classmethod
    def _lazy_tensor(cls, a: "MatrixRep", b: "MatrixRep") -> "MatrixRep":
        out = cls.__new__(cls)
        out.algebra = a.algebra
        out._exact = None
        out._rho = None
        out.d = a.d * b.d
        out.is_exact = a.is_exact and b.is_exact
        out._parts = (a, b)
        out._tensor_cache = {}
        out._group_cache = {}
        return out

    @property
    def rho(self) -> tuple:
        if self._rho is None:
            a, b = self._parts
            ia, ib = np.eye(a.d), np.eye(b.d)
            self._rho = tuple(np.kron(x, ib) + np.kron(ia, y) for x, y in zip(a.rho, b.rho))
        return self._rho

    @property
    def exact(self):
        if self._exact is None and self._parts is not None and self.is_exact:
            a, b = self._parts
            ia = np.array([[int(i == j) for j in range(a.d)] for i in range(a.d)], dtype=object)
            ib = np.array([[int(i == j) for j in range(b.d)] for i in range(b.d)], dtype=object)
            self._exact = tuple(np.kron(x, ib) + np.kron(ia, y) for x, y in zip(a.exact, b.exact))
        return self._exact

    def check(self, tol: float = REP_TOL):
        """Verify [rho_i, rho_j] = sum_k c_ijk rho_k (exactly if possible)."""
        n = self.algebra.dim
        mats = self.exact if self.is_exact else self.rho
        scale = max(1.0, max(np.linalg.norm(m) for m in self.rho) ** 2)
        for i in range(n):
            for j in range(i + 1, n):
                lhs = mats[i].dot(mats[j]) - mats[j].dot(mats[i])
                rhs = np.full(mats[0].shape, 0, dtype=object) if self.is_exact else np.zeros_like(mats[0])
                for k, x in self.algebra.bracket_basis(i, j):
                    rhs = rhs + (x * mats[k] if self.is_exact else float(x) * mats[k])
                if self.is_exact:
                    ok = all(a == b for a, b in zip(lhs.reshape(-1), rhs.reshape(-1)))
                else:
                    ok = np.linalg.norm(lhs - rhs) <= tol * scale
                if not ok:
                    raise StarQuantError(f"rho is not a representation: [rho_{i + 1}, rho_{j + 1}] mismatch")
        return self

    def act(self, i: int, U: np.ndarray, exact: bool) -> np.ndarray:
        """rho_i applied along the first axis of U."""
        if self._parts is None:
            M = self._exact[i] if exact else self._rho[i]
            return np.tensordot(M, U, axes=(1, 0))
        a, b = self._parts
        rest = U.shape[1:]
        V = U.reshape((a.d, b.d) + rest)
        left = a.act(i, V.reshape((a.d, -1)), exact).reshape(V.shape)
        W = np.moveaxis(V, 1, 0).reshape((b.d, -1))
        right = np.moveaxis(b.act(i, W, exact).reshape((b.d, a.d) + rest), 0, 1)
        return (left + right).reshape(U.shape)

    def algebra_matrix(self, x: Sequence[complex]) -> np.ndarray:
        if len(x) != self.algebra.dim:
            raise DimensionMismatch(f"expected {self.algebra.dim} coordinates")
        out = np.zeros((self.d, self.d), dtype=complex)
        for xi, m in zip(x, self.rho):
            if xi != 0:
                out = out + complex(xi) * m
        return out

    def group_matrix(self, g: "GroupElementExpr | None") -> np.ndarray:
        if g is None or not g.factors:
            return np.eye(self.d, dtype=complex)
        hit = self._group_cache.get(g)
        if hit is not None:
            return hit
        if self._parts is not None:
            out = np.kron(self._parts[0].group_matrix(g), self._parts[1].group_matrix(g))
        else:
            out = np.eye(self.d, dtype=complex)
            for x in g.factors:
                out = out @ expm(self.algebra_matrix(x))
        if len(self._group_cache) > 256:
            self._group_cache.clear()
        self._group_cache[g] = out
        return out

    def group_apply(self, g: "GroupElementExpr | None", u: np.ndarray) -> np.ndarray:
        """pi(g) u without forming pi(g) for tensor products."""
        u = numeric_array(u)
        if g is None or not g.factors:
            return u
        if self._parts is None:
            return np.tensordot(self.group_matrix(g), u, axes=(1, 0))
        a, b = self._parts
        rest = u.shape[1:]
        V = a.group_apply(g, u.reshape((a.d, -1))).reshape((a.d, b.d) + rest)
        W = b.group_apply(g, np.moveaxis(V, 1, 0).reshape((b.d, -1)))
        return np.moveaxis(W.reshape((b.d, a.d) + rest), 0, 1).reshape(u.shape)

    def tensor(self, other: "MatrixRep") -> "MatrixRep":
        if self.algebra != other.algebra:
            raise GroupDataMismatch("tensor product of representations of different algebras")
        hit = self._tensor_cache.get(id(other))
        if hit is not None and hit[0] is other:
            return hit[1]
        out = MatrixRep._lazy_tensor(self, other)
        self._tensor_cache[id(other)] = (other, out)
        return out

    def direct_sum(self, other: "MatrixRep") -> "MatrixRep":
        if self.algebra != other.algebra:
            raise GroupDataMismatch("direct sum of representations of different algebras")
        d1, d2 = self.d, other.d
        exact = self.is_exact and other.is_exact
        mats = []
        for a, b in zip(self.exact if exact else self.rho, other.exact if exact else other.rho):
            m = np.full((d1 + d2, d1 + d2), 0, dtype=object) if exact else np.zeros((d1 + d2, d1 + d2), dtype=complex)
            m[:d1, :d1] = a
            m[d1:, d1:] = b
            mats.append(m)
        return MatrixRep(self.algebra, mats, check=False)


@dataclass(frozen=True)
class GroupElementExpr:
    """g = exp(x_1) exp(x_2) ... with each x_j a coordinate vector in the Lie algebra."""

    factors: tuple = ()

    @classmethod
    def exp(cls, *xs) -> "GroupElementExpr":
        return cls(tuple(tuple(complex(c) for c in x) for x in xs))

    def __mul__(self, other: "GroupElementExpr") -> "GroupElementExpr":
        return GroupElementExpr(self.factors + other.factors)

    @property
    def is_identity(self) -> bool:
        return all(all(c == 0 for c in x) for x in self.factors)


IDENTITY = GroupElementExpr()


def _as_vector(v, exact_ok: bool):
    if exact_ok:
        ev = exact_array(v)
        if ev is not None:
            return ev
    return numeric_array(v)


class MatrixElementFunction:
    """phi(g) = w^T B pi(g) v, closed under Lie derivatives, sums and products."""

    def __init__(self, rep: MatrixRep, w, v, base=None):
        exact_ok = rep.is_exact and base is None
        self.rep = rep
        self.w = _as_vector(w, exact_ok)
        self.v = _as_vector(v, exact_ok)
        if self.w.shape != (rep.d,) or self.v.shape != (rep.d,):
            raise DimensionMismatch(f"vectors must have length {rep.d}")
        if self.w.dtype == object and self.v.dtype != object:
            self.w = numeric_array(self.w)
        if self.v.dtype == object and self.w.dtype != object:
            self.v = numeric_array(self.v)
        self.base = None if base is None else numeric_array(base)

    @property
    def algebra(self) -> LieAlgebraSpec:
        return self.rep.algebra

    @property
    def exact(self) -> bool:
        return self.v.dtype == object and self.base is None

    def _replace_v(self, v) -> "MatrixElementFunction":
        out = MatrixElementFunction.__new__(MatrixElementFunction)
        out.rep, out.w, out.v, out.base = self.rep, self.w, v, self.base
        return out

    def effective_left(self) -> np.ndarray:
        """B^T w as a numeric vector, so that phi(g) = <B^T w, pi(g) v>."""
        w = numeric_array(self.w)
        return w if self.base is None else self.base.T @ w

    def apply_word(self, word: Sequence[int]) -> "MatrixElementFunction":
        exact = self.exact
        v = self.v
        for i in reversed(tuple(word)):
            v = self.rep.act(i, v, exact)
        return self._replace_v(v)

    def apply_pbw(self, terms: Mapping) -> "MatrixElementFunction":
        """Act with sum_m c_m Lie(e_1^{m_1} ... e_n^{m_n}); coefficients may be exact or complex."""
        exact = self.exact and all(isinstance(c, _EXACT_TYPES) for c in terms.values())
        v0 = self.v if exact else numeric_array(self.v)
        acc = None
        for m, c in terms.items():
            u = v0
            for i in range(len(m) - 1, -1, -1):
                for _ in range(m[i]):
                    u = self.rep.act(i, u, exact)
            term = u * c if exact else u * complex(c)
            acc = term if acc is None else acc + term
        if acc is None:
            acc = v0 * 0
        out = self._replace_v(acc)
        if not exact:
            out.w = numeric_array(self.w)
        return out

    def scale(self, c) -> "MatrixElementFunction":
        if self.exact and isinstance(c, _EXACT_TYPES):
            return self._replace_v(self.v * c)
        out = self._replace_v(numeric_array(self.v) * complex(c))
        out.w = numeric_array(self.w)
        return out

    def is_zero(self) -> bool:
        return _is_zero_vec(self.v) or _is_zero_vec(self.w)

    def is_constant(self) -> bool:
        return self.rep.d == 1 and self.base is None and all(_is_zero_vec(m) for m in self.rep.rho)

    def is_unit(self) -> bool:
        return self.is_constant() and complex(self.w[0]) * complex(self.v[0]) == 1

    def constant_value(self):
        return self.w[0] * self.v[0]

    def __mul__(self, other):
        if isinstance(other, Jet):
            return to_jet(self, other.order, other.base) * other
        if not isinstance(other, MatrixElementFunction):
            return NotImplemented
        if self.algebra != other.algebra:
            raise GroupDataMismatch("product of functions on different groups")
        if self.is_constant():
            return other if self.is_unit() else other.scale(self.constant_value())
        if other.is_constant():
            return self if other.is_unit() else self.scale(other.constant_value())
        rep = self.rep.tensor(other.rep)
        base = None
        if self.base is not None or other.base is not None:
            b1 = self.base if self.base is not None else np.eye(self.rep.d)
            b2 = other.base if other.base is not None else np.eye(other.rep.d)
            base = np.kron(b1, b2)
        if self.exact and other.exact and base is None:
            return MatrixElementFunction(rep, np.kron(self.w, other.w), np.kron(self.v, other.v))
        return MatrixElementFunction(rep, np.kron(numeric_array(self.w), numeric_array(other.w)),
                                     np.kron(numeric_array(self.v), numeric_array(other.v)), base)

    def __add__(self, other):
        if not isinstance(other, MatrixElementFunction):
            return NotImplemented
        if self.rep is other.rep and self.base is None and other.base is None and \
                _same_vec(self.w, other.w):
            return self._replace_v(self.v + other.v if self.v.dtype == other.v.dtype
                                   else numeric_array(self.v) + numeric_array(other.v))
        rep = self.rep.direct_sum(other.rep)
        w1, w2 = self.effective_left(), other.effective_left()
        if self.exact and other.exact:
            return MatrixElementFunction(rep, np.concatenate([self.w, other.w]), np.concatenate([self.v, other.v]))
        return MatrixElementFunction(rep, np.concatenate([w1, w2]),
                                     np.concatenate([numeric_array(self.v), numeric_array(other.v)]))

    def __call__(self, g: GroupElementExpr | None = None) -> complex:
        return coeff_eval(self, g)

    def key(self):
        """Hashable identity used to merge equal terms in phase space polynomials."""
        if self.exact:
            return (id(self.rep), tuple(self.w), tuple(self.v))
        return (id(self.rep), self.effective_left().tobytes(), numeric_array(self.v).tobytes())

    def __repr__(self):
        return f"MatrixElementFunction(d={self.rep.d}, exact={self.exact})"


def _same_vec(a, b) -> bool:
    if a.dtype == object and b.dtype == object:
        return all(x == y for x, y in zip(a, b))
    return np.array_equal(numeric_array(a), numeric_array(b))


class Jet:
    """Finite Lie-Taylor data (Lie(alpha) phi)(g0) for all words with |alpha| <= order."""

    def __init__(self, algebra: LieAlgebraSpec, order: int, coeffs: Mapping, base: GroupElementExpr | None = None):
        self.algebra = algebra
        self.order = order
        self.base = base if base is not None else IDENTITY
        self.coeffs = {}
        for word, c in coeffs.items():
            word = tuple(word)
            if len(word) > order:
                raise JetOrderExhausted(f"word {word} longer than jet order {order}")
            if any(not 0 <= x < algebra.dim for x in word):
                raise DimensionMismatch(f"word {word} has letters outside the basis")
            self.coeffs[word] = complex(c)

    def value(self, word=()) -> complex:
        return self.coeffs.get(tuple(word), 0j)

    def apply_word(self, word: Sequence[int]) -> "Jet":
        word = tuple(word)
        if len(word) > self.order:
            raise JetOrderExhausted(f"word of length {len(word)} exceeds jet order {self.order}")
        k = len(word)
        return Jet(self.algebra, self.order - k,
                   {w[k:]: c for w, c in self.coeffs.items() if w[:k] == word}, self.base)

    def apply_pbw(self, terms: Mapping) -> "Jet":
        deg = max((sum(m) for m in terms), default=0)
        if deg > self.order:
            raise JetOrderExhausted(f"operator of order {deg} exceeds jet order {self.order}")
        out: dict = {}
        for m, c in terms.items():
            word = tuple(i for i, k in enumerate(m) for _ in range(k))
            sub = self.apply_word(word)
            for w, x in sub.coeffs.items():
                if len(w) <= self.order - deg:
                    out[w] = out.get(w, 0j) + complex(c) * x
        return Jet(self.algebra, self.order - deg, out, self.base)

    def scale(self, c) -> "Jet":
        return Jet(self.algebra, self.order, {w: complex(c) * x for w, x in self.coeffs.items()}, self.base)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs.values())

    def is_unit(self) -> bool:
        return False

    def _check(self, other: "Jet"):
        if self.algebra != other.algebra or self.base != other.base:
            raise GroupDataMismatch("jets at different base points or on different groups")

    def __add__(self, other):
        if isinstance(other, MatrixElementFunction):
            other = to_jet(other, self.order, self.base)
        if not isinstance(other, Jet):
            return NotImplemented
        self._check(other)
        order = min(self.order, other.order)
        out: dict = {}
        for src in (self.coeffs, other.coeffs):
            for w, x in src.items():
                if len(w) <= order:
                    out[w] = out.get(w, 0j) + x
        return Jet(self.algebra, order, out, self.base)

    def __mul__(self, other):
        """Leibniz rule: derivatives of a product split over complementary subsequences."""
        if isinstance(other, MatrixElementFunction):
            other = to_jet(other, self.order, self.base)
        if not isinstance(other, Jet):
            return NotImplemented
        self._check(other)
        order = min(self.order, other.order)
        n = self.algebra.dim
        out: dict = {}
        for k in range(order + 1):
            for word in itertools.product(range(n), repeat=k):
                total = 0j
                for mask in range(1 << k):
                    left = tuple(word[t] for t in range(k) if mask >> t & 1)
                    right = tuple(word[t] for t in range(k) if not mask >> t & 1)
                    total += self.value(left) * other.value(right)
                if total:
                    out[word] = total
        return Jet(self.algebra, order, out, self.base)

    __rmul__ = __mul__

    def key(self):
        return ("jet", id(self))

    def __repr__(self):
        return f"Jet(order={self.order}, terms={len(self.coeffs)})"


CoeffFn = "MatrixElementFunction | Jet"


def to_jet(phi: MatrixElementFunction, order: int, g: GroupElementExpr | None = None) -> Jet:
    """All word derivatives of phi at g up to ``order``."""
    g = g if g is not None else IDENTITY
    left = phi.effective_left() @ phi.rep.group_matrix(g)
    mats = phi.rep.rho
    coeffs = {(): complex(left @ numeric_array(phi.v))}
    layer = {(): numeric_array(phi.v)}
    for _ in range(order):
        nxt = {}
        for word, u in layer.items():
            for i, m in enumerate(mats):
                # prepend: Lie(i, word) corresponds to rho_i rho_word v
                nxt[(i,) + word] = m @ u
        for word, u in nxt.items():
            coeffs[word] = complex(left @ u)
        layer = nxt
    return Jet(phi.algebra, order, coeffs, g)


def lie_derive_word(phi, word: Sequence[int]):
    """Lie(alpha) phi with Lie(alpha) = Lie_{alpha_1} o ... o Lie_{alpha_k}."""
    word = tuple(word)
    if any(not 0 <= x < phi.algebra.dim for x in word):
        raise DimensionMismatch(f"word {word} has letters outside the basis")
    return phi.apply_word(word)


def coeff_eval(phi, g: GroupElementExpr | None = None) -> complex:
    if isinstance(phi, Jet):
        if g is None or g == phi.base:
            return phi.value(())
        raise JetNotEvaluable("a jet can only be evaluated at its base point")
    left = phi.effective_left()
    return complex(left @ phi.rep.group_apply(g, phi.v))


def lie_taylor_eval(phi, g: GroupElementExpr | None, x: Sequence[complex], N: int) -> complex:
    """Truncated Lie-Taylor series sum_{k<=N} (1/k!) sum_{|alpha|=k} (Lie(alpha)phi)(g) x^alpha.

    For matrix elements the inner word sum is accumulated degree by degree:
    sum_{|alpha|=k} x^alpha rho_{alpha_1}...rho_{alpha_k} v = X u_{k-1} with X = sum_j x^j rho_j.
    """
    if N < 0:
        raise ValueError("order must be nonnegative")
    x = [complex(c) for c in x]
    if len(x) != phi.algebra.dim:
        raise DimensionMismatch(f"expected {phi.algebra.dim} coordinates")
    if isinstance(phi, Jet):
        if g is not None and g != phi.base:
            raise JetNotEvaluable("jet Lie-Taylor series only at the base point")
        total = 0j
        for word, c in phi.coeffs.items():
            if len(word) <= N:
                total += c * math.prod(x[i] for i in word) / math.factorial(len(word))
        if N > phi.order:
            raise JetOrderExhausted(f"order {N} exceeds jet order {phi.order}")
        return total
    left = phi.effective_left() @ phi.rep.group_matrix(g)
    X = phi.rep.algebra_matrix(x)
    u = numeric_array(phi.v)
    total = complex(left @ u)
    for k in range(1, N + 1):
        u = X @ u / k
        total += complex(left @ u)
    return total


def _normalize_state(u: np.ndarray, tol: float = 1e-14):
    norm = np.linalg.norm(u)
    if norm <= tol:
        return None, 0.0, None
    idx = int(np.argmax(np.abs(u) > 1e-9 * norm))
    pivot = u[idx]
    nu = u / pivot
    key = (idx,) + tuple(np.round(nu.real, 11)) + tuple(np.round(nu.imag, 11))
    return nu, abs(pivot), key


def majorant_coeffs(phi, g: GroupElementExpr | None, N: int, max_states: int = 200000) -> list:
    """c_k = (1/k!) sum_{|alpha|=k} |(Lie(alpha) phi)(g)| for k = 0..N.

    For matrix elements the word sum is carried out on projective classes of the
    vectors rho_alpha v: words whose vectors agree up to a scalar are merged with
    the moduli of the scalars accumulated.  For monomial-type representations the
    number of classes stays small, so orders of 30+ are cheap.
    """
    if isinstance(phi, Jet):
        if g is not None and g != phi.base:
            raise JetNotEvaluable("jet majorant only at the base point")
        if N > phi.order:
            raise JetOrderExhausted(f"order {N} exceeds jet order {phi.order}")
        sums = [0.0] * (N + 1)
        for word, c in phi.coeffs.items():
            if len(word) <= N:
                sums[len(word)] += abs(c)
        return [s / math.factorial(k) for k, s in enumerate(sums)]
    left = phi.effective_left() @ phi.rep.group_matrix(g)
    mats = phi.rep.rho
    out = []
    states: dict = {}
    nu, scale, key = _normalize_state(numeric_array(phi.v))
    if key is not None:
        states[key] = [nu, scale]
    for k in range(N + 1):
        total = sum(wt * abs(left @ vec) for vec, wt in states.values())
        out.append(float(total) / math.factorial(k))
        if k == N:
            break
        nxt: dict = {}
        for vec, wt in states.values():
            for m in mats:
                nu, scale, key = _normalize_state(m @ vec)
                if key is None:
                    continue
                hit = nxt.get(key)
                if hit is None:
                    nxt[key] = [nu, wt * scale]
                else:
                    hit[1] += wt * scale
        if len(nxt) > max_states:
            raise StarQuantError(f"majorant recursion exceeded {max_states} projective states")
        states = nxt
    return out


def majorant_coeffs_bruteforce(phi, g: GroupElementExpr | None, N: int) -> list:
    """Reference implementation enumerating all n^k words; only for small N."""
    jet = to_jet(phi, N, g)
    return majorant_coeffs(jet, jet.base, N)


def _vanishing_order(phi: MatrixElementFunction) -> int | None:
    """Smallest k with rho_alpha v = 0 for every word of length k, or None if never."""
    vecs = [numeric_array(phi.v)]
    for k in range(phi.rep.d + 1):
        basis = _span(vecs)
        if basis.shape[1] == 0:
            return k
        vecs = [m @ basis[:, j] for m in phi.rep.rho for j in range(basis.shape[1])]
    return None


def _span(vecs) -> np.ndarray:
    if not vecs:
        return np.zeros((0, 0))
    M = np.column_stack(vecs)
    if not np.any(M):
        return np.zeros((M.shape[0], 0))
    u, s, _ = np.linalg.svd(M, full_matrices=False)
    rank = int(np.sum(s > 1e-12 * max(1.0, s[0])))
    return u[:, :rank]


def _log_tail(log_ratio: float, N: int, terms: int = 400) -> float:
    """log of sum_{k>N} rho^k k^k / k! with rho = exp(log_ratio), plus a geometric remainder."""
    logs = [k * log_ratio + k * math.log(k) - math.lgamma(k + 1) for k in range(N + 1, N + 1 + terms)]
    mx = max(logs)
    s = sum(math.exp(x - mx) for x in logs)
    # after the explicit terms, successive ratios are below rho * e < 1
    q = math.exp(log_ratio + 1)
    s += math.exp(logs[-1] - mx) * q / (1 - q)
    return mx + math.log(s)


@dataclass
class EntireSeminorm:
    truncation: float
    tail_bound: float
    r: float
    coefficients: list = field(default_factory=list)


def entire_seminorm(phi: MatrixElementFunction, c: float, N: int, r: float | None = None) -> EntireSeminorm:
    """Truncated q_{0,c}(phi) = sum_{k<=N} c_k c^k with a rigorous tail bound.

    Rescaling each basis vector to operator norm 1 and applying the Lie
    theoretic Cauchy estimate gives c_k <= s^k k^k / (k! r^k) ||phi||_{K_r}
    with s = sum_i ||rho_i||, and on K_r = {||g|| <= e^r} one has
    |phi| <= |B^T w| |v| e^r.  The tail is finite for r > s c e.  When all words
    of length N+1 annihilate v the tail is exactly zero and no rescaling is
    needed; otherwise a basis element acting as zero is an error.  The default
    radius is r = 4 s c e.
    """
    if not isinstance(phi, MatrixElementFunction):
        raise TypeError("entire_seminorm needs a matrix element function")
    coeffs = majorant_coeffs(phi, None, N)
    trunc = float(sum(ck * c ** k for k, ck in enumerate(coeffs)))
    vanish = _vanishing_order(phi)
    if c == 0 or (vanish is not None and vanish <= N + 1):
        return EntireSeminorm(trunc, 0.0, r if r is not None else math.nan, coeffs)
    norms = [op_norm(m) for m in phi.rep.rho]
    if any(x == 0 for x in norms):
        raise NonNormalizableBasis("a basis element acts as zero and cannot be rescaled to norm 1")
    s = sum(norms)
    if r is None:
        r = 4 * s * c * math.e
    if r <= s * c * math.e:
        return EntireSeminorm(trunc, math.inf, r, coeffs)
    sup_bound = np.linalg.norm(phi.effective_left()) * np.linalg.norm(numeric_array(phi.v)) * math.exp(r)
    if sup_bound == 0:
        return EntireSeminorm(trunc, 0.0, r, coeffs)
    log_tail = _log_tail(math.log(s * c / r), N)
    return EntireSeminorm(trunc, float(sup_bound * math.exp(log_tail)), r, coeffs)


def restriction_bound(phi: MatrixElementFunction, c: float, N: int, r: float) -> float:
    """||phi||_{K_r} sum_{k<=N} (s/r)^k k^k/k! c^k, the bound on truncated q_{0,c} for complex groups."""
    s = sum(op_norm(m) for m in phi.rep.rho)
    sup_bound = np.linalg.norm(phi.effective_left()) * np.linalg.norm(numeric_array(phi.v)) * math.exp(r)
    total = 0.0
    for k in range(N + 1):
        kk = 1.0 if k == 0 else math.exp(k * math.log(k) - math.lgamma(k + 1))
        total += (s / r) ** k * kk * c ** k
    return sup_bound * total


@dataclass
class CauchyInstance:
    k: int
    r: float
    lhs: float
    sampled_sup: float
    rhs: float
    violated: bool


@dataclass
class CauchyReport:
    instances: list
    violations: int
    worst_ratio: float

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _random_unit_direction(rep: MatrixRep, rng: np.random.Generator) -> np.ndarray:
    x = rng.normal(size=rep.algebra.dim) + 1j * rng.normal(size=rep.algebra.dim)
    return x / op_norm(rep.algebra_matrix(x))


def sample_K_r(rep: MatrixRep, r: float, size: int, rng: np.random.Generator) -> list:
    """Quasi-random elements exp(eta_1)...exp(eta_m), m <= 3, with sum ||eta_j|| <= r.

    Each such product has operator norm at most e^r, hence lies in K_r.
    """
    out = [np.eye(rep.d, dtype=complex)]
    for _ in range(size - 1):
        m = int(rng.integers(1, 4))
        budget = r * rng.uniform(0.0, 1.0) ** 0.5
        split = rng.dirichlet(np.ones(m)) * budget
        g = np.eye(rep.d, dtype=complex)
        for share in split:
            g = g @ expm(share * rep.algebra_matrix(_random_unit_direction(rep, rng)))
        out.append(g)
    return out


def cauchy_check(phi: MatrixElementFunction, g: GroupElementExpr | None, xi: Sequence[complex],
                 directions: Sequence[Sequence[complex]], r: float,
                 k0_samples: Sequence[Sequence[complex]] = (), kr_sample_size: int = 128,
                 rng: np.random.Generator | None = None, torus_points: int = 8,
                 tol: float = 1e-9) -> CauchyInstance:
    """One instance of |(Lie(xi_1...xi_k) phi)(g exp xi)| <= ||phi||_{g exp(K0) K_r} k^k / r^k.

    The left side is exact (matrix algebra).  The sup on the right is sampled over
    g exp(xi') h with xi' in {xi} + k0_samples and h drawn from K_r, including the
    torus points exp(z_1 xi_1)...exp(z_k xi_k), |z_j| = r/k, that the proof of
    the estimate uses.  Sampling can only lower the right side, so a reported
    violation means the left side is wrong.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    rep = phi.rep
    k = len(directions)
    dirs = [rep.algebra_matrix(d) for d in directions]
    for D in dirs:
        if op_norm(D) > 1 + 1e-12:
            raise ValueError("directions must have operator norm <= 1")
    left = phi.effective_left() @ rep.group_matrix(g)
    start = expm(rep.algebra_matrix(xi))
    u = numeric_array(phi.v)
    for D in reversed(dirs):
        u = D @ u
    lhs = abs(left @ start @ u)

    v = numeric_array(phi.v)
    starts = [start] + [expm(rep.algebra_matrix(x)) for x in k0_samples]
    hs = sample_K_r(rep, r, kr_sample_size, rng)
    if k:
        rad = r / k
        if k <= 3:
            grids = itertools.product(range(torus_points), repeat=k)
            phases = [np.array(t) * 2 * np.pi / torus_points for t in grids]
        else:
            phases = [rng.uniform(0, 2 * np.pi, k) for _ in range(torus_points ** 3)]
        for th in phases:
            h = np.eye(rep.d, dtype=complex)
            for D, t in zip(dirs, th):
                h = h @ expm(rad * np.exp(1j * t) * D)
            hs.append(h)
    sup = 0.0
    for s0 in starts:
        base = left @ s0
        for h in hs:
            sup = max(sup, abs(base @ (h @ v)))
    factor = 1.0 if k == 0 else (k / r) ** k
    rhs = sup * factor
    violated = lhs > rhs * (1 + tol) + tol * 1e-3
    return CauchyInstance(k, r, float(lhs), float(sup), float(rhs), bool(violated))


def factorial_estimate_holds(n: int) -> bool:
    """Exact check of 1/n! <= e^n / n^n via a rational lower bound for e."""
    e_lower = sum(Fraction(1, math.factorial(j)) for j in range(40))
    return Fraction(n ** n) <= math.factorial(n) * e_lower ** n


def complex_extension_eval(phi: MatrixElementFunction, g: GroupElementExpr | None,
                           chi: Sequence[float], xi: Sequence[float]) -> complex:
    """Holomorphic extension Phi at g exp(chi + i xi) in the complexified matrix group.

    Phi(h) = w^T B pi_C(h) v with the same matrices; at h = g exp(chi + i xi)
    this is the sum of the Lie-Taylor series of phi at g evaluated at chi + i xi.
    """
    z = [complex(a) + 1j * complex(b) for a, b in zip(chi, xi)]
    return coeff_eval(phi, (g or IDENTITY) * GroupElementExpr.exp(z))


def extension_at_product(phi: MatrixElementFunction, g: GroupElementExpr | None,
                         chi: Sequence[float], xi: Sequence[float]) -> complex:
    """Phi at g exp(chi) exp(i xi); equals the Taylor value at chi + i xi only when [chi, xi] = 0."""
    ixi = [1j * complex(b) for b in xi]
    return coeff_eval(phi, (g or IDENTITY) * GroupElementExpr.exp(chi, ixi))


# --- representations for the catalog ------------------------------------------


def _E(d: int, i: int, j: int) -> list:
    return [[1 if (r, c) == (i, j) else 0 for c in range(d)] for r in range(d)]


def jordan_shift(size: int) -> list:
    """Nilpotent N with N e_m = e_{m-1}; exp(tN)[0, m] = t^m / m!."""
    return [[1 if c == r + 1 else 0 for c in range(size)] for r in range(size)]


def unipotent_rep(n: int, size: int = 2) -> MatrixRep:
    """Commuting nilpotent rep of abelian(n) on (C^size)^{(x) n}; realizes polynomials of degree < size per variable."""
    alg = catalog(f"abelian({n})")
    N = np.array(jordan_shift(size), dtype=object)
    I = np.array([[int(i == j) for j in range(size)] for i in range(size)], dtype=object)
    mats = []
    for j in range(n):
        m = np.array([[1]], dtype=object)
        for t in range(n):
            m = np.kron(m, N if t == j else I)
        mats.append(m)
    return MatrixRep(alg, mats)


def polynomial_function(rep: MatrixRep, size: int, poly: Mapping) -> MatrixElementFunction:
    """sum_a c_a q^a on abelian(n) as a matrix element of ``unipotent_rep(n, size)``.

    q^a = a! * <e_0, pi(q) e_a> with e_a the tensor basis vector of multi-index a.
    """
    n = rep.algebra.dim
    d = size ** n
    v = [Fraction(0)] * d
    for a, c in poly.items():
        if any(x >= size for x in a):
            raise DimensionMismatch(f"monomial {a} needs a larger unipotent representation")
        idx = 0
        for x in a:
            idx = idx * size + x
        v[idx] = v[idx] + _exactify(c) * math.prod(math.factorial(x) for x in a)
    w = [Fraction(int(i == 0)) for i in range(d)]
    return MatrixElementFunction(rep, w, v)


def constant_function(algebra: LieAlgebraSpec, value=1) -> MatrixElementFunction:
    rep = MatrixRep(algebra, [[[0]] for _ in range(algebra.dim)], check=False)
    return MatrixElementFunction(rep, [1], [value])


def matrix_element_polynomial(phi: MatrixElementFunction) -> dict:
    """Exact Taylor polynomial {a: coeff} of a matrix element of a commuting nilpotent representation.

    phi(q) = sum_a q^a / a! <w, rho^a v>; requires exact data and an abelian algebra.
    """
    if not phi.exact or not phi.algebra.is_abelian():
        raise StarQuantError("exact polynomial extraction needs exact data on an abelian algebra")
    n = phi.algebra.dim
    out: dict = {}

    def rec(j: int, a: list, u):
        if j == n:
            val = sum((x * y for x, y in zip(phi.w, u)), Fraction(0))
            if val != 0:
                out[tuple(a)] = val / math.prod(math.factorial(x) for x in a)
            return
        cur = u
        while True:
            rec(j + 1, a, cur)
            cur = phi.rep.act(j, cur, True)
            a[j] += 1
            if all(x == 0 for x in cur) or a[j] > phi.rep.d:
                break
        a[j] = 0

    rec(0, [0] * n, phi.v)
    return out


def catalog_rep(algebra: LieAlgebraSpec | str) -> MatrixRep:
    """Faithful defining representation for each catalog algebra."""
    alg = catalog(algebra) if isinstance(algebra, str) else algebra
    names = alg.names
    if alg.is_abelian():
        return unipotent_rep(alg.dim, 2) if alg == catalog(f"abelian({alg.dim})") else _fail(alg)
    if names == ("q", "p", "c"):
        return MatrixRep(alg, [_E(3, 0, 1), _E(3, 1, 2), _E(3, 0, 2)])
    if names == ("h", "e", "f"):
        return MatrixRep(alg, [[[1, 0], [0, -1]], _E(2, 0, 1), _E(2, 1, 0)])
    if names == ("L1", "L2", "L3"):
        # (L_i)_{jk} = -epsilon_{ijk}
        L1 = [[0, 0, 0], [0, 0, -1], [0, 1, 0]]
        L2 = [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]
        L3 = [[0, -1, 0], [1, 0, 0], [0, 0, 0]]
        return MatrixRep(alg, [L1, L2, L3])
    if names == ("a", "b"):
        return MatrixRep(alg, [_E(2, 0, 0), _E(2, 0, 1)])
    return _fail(alg)


def _fail(alg):
    raise StarQuantError(f"no built-in representation for {alg}")
