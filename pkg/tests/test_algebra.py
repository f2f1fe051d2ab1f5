import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from starquant.algebra import (CATALOG_NAMES, algebra_from_json, algebra_to_json, bracket, catalog, change_of_basis,
                               from_brackets, validate_algebra)
from starquant.errors import AntisymmetryViolation, DimensionMismatch, JacobiViolation, UnknownAlgebra
from strategies import ALGEBRAS, fractions


@pytest.mark.parametrize("name", ALGEBRAS + ["abelian(1)", "abelian(5)"])
def test_catalog_is_valid(name):
    assert validate_algebra(catalog(name)) == catalog(name)


def test_catalog_brackets():
    h = catalog("heisenberg")
    assert bracket(h, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    s = catalog("sl2")
    assert bracket(s, (1, 0, 0), (0, 1, 0)) == (0, 2, 0)
    assert bracket(s, (1, 0, 0), (0, 0, 1)) == (0, 0, -2)
    assert bracket(s, (0, 1, 0), (0, 0, 1)) == (1, 0, 0)
    so3 = catalog("so3")
    assert bracket(so3, (0, 1, 0), (0, 0, 1)) == (1, 0, 0)
    assert bracket(so3, (0, 0, 1), (1, 0, 0)) == (0, 1, 0)
    assert bracket(catalog("axb"), (1, 0), (0, 1)) == (0, 1)
    assert catalog("abelian(3)").is_abelian()


def test_unknown_algebra():
    with pytest.raises(UnknownAlgebra):
        catalog("sl3")
    with pytest.raises(UnknownAlgebra):
        catalog("abelian(0)")
    assert "abelian(n)" in CATALOG_NAMES


def test_antisymmetry_violation_reports_indices():
    n = 2
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    c[0][1][1] = Fraction(1)
    from starquant.algebra import LieAlgebraSpec

    with pytest.raises(AntisymmetryViolation) as exc:
        validate_algebra(LieAlgebraSpec(["a", "b"], c))
    assert exc.value.indices == (1, 2, 2)


def test_jacobi_violation():
    # [x,y]=y, [x,z]=y, [y,z]=x is antisymmetric but not Lie
    alg = from_brackets(["x", "y", "z"], {(0, 1): {1: 1}, (0, 2): {1: 1}, (1, 2): {0: 1}})
    with pytest.raises(JacobiViolation):
        validate_algebra(alg)


def test_bracket_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        bracket(catalog("sl2"), (1, 0), (0, 1, 0))


@pytest.mark.parametrize("name", ALGEBRAS)
def test_json_roundtrip(name):
    alg = catalog(name)
    data = json.loads(json.dumps(algebra_to_json(alg)))
    assert algebra_from_json(data) == alg


@given(st.sampled_from(ALGEBRAS), st.lists(fractions, min_size=3, max_size=3),
       st.lists(fractions, min_size=3, max_size=3))
def test_bracket_antisymmetric(name, x, y):
    alg = catalog(name)
    x, y = x[:alg.dim], y[:alg.dim]
    assert bracket(alg, x, y) == tuple(-t for t in bracket(alg, y, x))


def test_change_of_basis_is_valid_and_invertible():
    A = [[1, 0, 0], [0, 1, 1], [0, 1, -1]]
    s = change_of_basis(catalog("sl2"), A)
    validate_algebra(s)
    assert bracket(s, (1, 0, 0), (0, 1, 0)) == (0, 0, 2)
