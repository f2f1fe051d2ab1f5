"""Finite-dimensional Lie algebras given by rational structure constants.

Indices are 0-based in code.  ``c[i][j][k]`` is the coefficient of e_k in
[e_i, e_j].  Error messages and the JSON format use 1-based indices.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Sequence

from .errors import (AntisymmetryViolation, DimensionMismatch, JacobiViolation,
                     StarQuantError, UnknownAlgebra)
from .scalars import GaussianRational


class LieAlgebraSpec:
    """Basis labels plus structure constants; immutable and hashable by value."""

    __slots__ = ("dim", "names", "c", "_brackets", "_hash")

    def __init__(self, names: Sequence[str], c):
        n = len(names)
        if n < 1:
            raise StarQuantError("a Lie algebra needs dim >= 1")
        if len(set(names)) != n:
            raise StarQuantError(f"duplicate basis names in {list(names)}")
        if len(c) != n or any(len(row) != n for row in c) or any(
                len(col) != n for row in c for col in row):
            raise DimensionMismatch(f"structure constants must have shape {n}x{n}x{n}")
        self.dim = n
        self.names = tuple(names)
        self.c = tuple(tuple(tuple(Fraction(x) for x in col) for col in row) for row in c)
        # sparse view: (i, j) -> ((k, c_ijk), ...)
        self._brackets = {
            (i, j): tuple((k, x) for k, x in enumerate(self.c[i][j]) if x != 0)
            for i in range(n) for j in range(n)
        }
        self._hash = hash((self.names, self.c))

    def bracket_basis(self, i: int, j: int):
        """Sparse [e_i, e_j] as a tuple of (k, coefficient)."""
        return self._brackets[(i, j)]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise StarQuantError(f"unknown basis element {name!r}; have {self.names}") from None

    def is_abelian(self) -> bool:
        return all(not v for v in self._brackets.values())

    def __eq__(self, other):
        if not isinstance(other, LieAlgebraSpec):
            return NotImplemented
        return self is other or (self.names == other.names and self.c == other.c)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"LieAlgebraSpec(names={self.names})"


def validate_algebra(spec: LieAlgebraSpec) -> LieAlgebraSpec:
    """Return ``spec`` unchanged if it is antisymmetric and satisfies Jacobi."""
    n, c = spec.dim, spec.c
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if c[i][j][k] != -c[j][i][k]:
                    raise AntisymmetryViolation(i + 1, j + 1, k + 1)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    s = sum(c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l]
                            + c[k][i][m] * c[m][j][l] for m in range(n))
                    if s != 0:
                        raise JacobiViolation(i + 1, j + 1, k + 1, l + 1)
    return spec


def bracket(spec: LieAlgebraSpec, xi: Sequence, chi: Sequence) -> tuple:
    """[xi, chi] for coordinate vectors in the fixed basis.

    Coordinates may be ints, Fractions, GaussianRationals or floats/complex;
    the result uses whatever arithmetic the inputs use.
    """
    if len(xi) != spec.dim or len(chi) != spec.dim:
        raise DimensionMismatch(f"expected {spec.dim} coordinates, got {len(xi)} and {len(chi)}")
    out = [0] * spec.dim
    for i, a in enumerate(xi):
        if a == 0:
            continue
        for j, b in enumerate(chi):
            if b == 0:
                continue
            for k, x in spec.bracket_basis(i, j):
                out[k] = out[k] + a * b * x
    return tuple(out)


def basis_vector(spec: LieAlgebraSpec, i: int) -> tuple:
    return tuple(1 if k == i else 0 for k in range(spec.dim))


def from_brackets(names: Sequence[str], brackets: dict) -> LieAlgebraSpec:
    """Build a spec from {(i, j): {k: coeff}} with i < j (0-based), completing antisymmetrically."""
    n = len(names)
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), coeffs in brackets.items():
        for k, x in coeffs.items():
            c[i][j][k] = Fraction(x)
            c[j][i][k] = -Fraction(x)
    return LieAlgebraSpec(names, c)


def abelian(n: int) -> LieAlgebraSpec:
    return from_brackets([f"e{k + 1}" for k in range(n)], {})


def heisenberg() -> LieAlgebraSpec:
    # basis (q, p, c) with [q, p] = c
    return from_brackets(["q", "p", "c"], {(0, 1): {2: 1}})


def sl2() -> LieAlgebraSpec:
    # basis (h, e, f): [h, e] = 2e, [h, f] = -2f, [e, f] = h
    return from_brackets(["h", "e", "f"], {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})


def so3() -> LieAlgebraSpec:
    # [L1, L2] = L3 and cyclic
    return from_brackets(["L1", "L2", "L3"], {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}})


def axb() -> LieAlgebraSpec:
    # affine group of the line: [a, b] = b
    return from_brackets(["a", "b"], {(0, 1): {1: 1}})


CATALOG_NAMES = ("abelian(n)", "heisenberg", "sl2", "so3", "axb")
NONABELIAN = ("heisenberg", "sl2", "so3", "axb")

_ABELIAN_RE = re.compile(r"^abelian\((\d+)\)$")


def catalog(name: str) -> LieAlgebraSpec:
    m = _ABELIAN_RE.match(name.strip())
    if m:
        n = int(m.group(1))
        if n < 1:
            raise UnknownAlgebra(name)
        return validate_algebra(abelian(n))
    table = {"heisenberg": heisenberg, "sl2": sl2, "so3": so3, "axb": axb}
    try:
        return validate_algebra(table[name.strip()]())
    except KeyError:
        raise UnknownAlgebra(f"{name!r} is not one of {CATALOG_NAMES}") from None


# --- JSON -----------------------------------------------------------------

def algebra_to_json(spec: LieAlgebraSpec) -> dict:
    brackets = []
    for i in range(spec.dim):
        for j in range(i + 1, spec.dim):
            coeffs = {str(k + 1): str(x) for k, x in spec.bracket_basis(i, j)}
            if coeffs:
                brackets.append({"i": i + 1, "j": j + 1, "coeffs": coeffs})
    return {"dim": spec.dim, "names": list(spec.names), "brackets": brackets}


def algebra_from_json(data) -> LieAlgebraSpec:
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["dim"])
    names = data.get("names") or [f"e{k + 1}" for k in range(n)]
    if len(names) != n:
        raise DimensionMismatch(f"dim={n} but {len(names)} names")
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for entry in data.get("brackets", []):
        i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
        if not (0 <= i < n and 0 <= j < n):
            raise DimensionMismatch(f"bracket index out of range: {entry}")
        for k, x in entry["coeffs"].items():
            k = int(k) - 1
            if not 0 <= k < n:
                raise DimensionMismatch(f"bracket index out of range: {entry}")
            c[i][j][k] = Fraction(str(x))
            c[j][i][k] = -Fraction(str(x))
    return LieAlgebraSpec(names, c)


def as_exact_vector(coords: Sequence) -> tuple:
    return tuple(GaussianRational.coerce(x) for x in coords)


def _inverse(A) -> list:
    """Exact inverse of a square rational matrix by Gauss-Jordan elimination."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            raise StarQuantError("change of basis matrix is singular")
        M[col], M[pivot] = M[pivot], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def change_of_basis(spec: LieAlgebraSpec, A, names: Sequence[str] | None = None) -> LieAlgebraSpec:
    """Structure constants in the basis f_i = sum_j A[i][j] e_j."""
    n = spec.dim
    A = [[Fraction(x) for x in row] for row in A]
    Ainv = _inverse(A)
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # [f_i, f_j] in e-coordinates, then back to f-coordinates
            e_coords = bracket(spec, A[i], A[j])
            for k in range(n):
                c[i][j][k] = sum((e_coords[m] * Ainv[m][k] for m in range(n)), Fraction(0))
    return LieAlgebraSpec(names or [f"f{k + 1}" for k in range(n)], c)
