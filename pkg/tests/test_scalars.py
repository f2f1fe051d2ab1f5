from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from starquant.scalars import GaussianRational, HbarScalar, hbar_eval, hbar_over_i
from strategies import gaussians, hbar_scalars


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not b.is_zero():
        assert (a / b) * b == a


@given(gaussians)
def test_gaussian_matches_complex(a):
    assert complex(a * a) == pytest.approx(complex(a) ** 2)


def test_gaussian_rejects_floats():
    with pytest.raises(TypeError):
        GaussianRational(0.5)
    with pytest.raises(TypeError):
        GaussianRational.coerce(1j)


def test_i_squared():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert i ** 4 == 1


@given(hbar_scalars, hbar_scalars, hbar_scalars)
def test_hbar_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@given(hbar_scalars, hbar_scalars, st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_hbar_evaluation_is_a_ring_map(a, b, h):
    assert hbar_eval(a * b, h) == pytest.approx(hbar_eval(a, h) * hbar_eval(b, h), abs=1e-9)


@given(hbar_scalars, hbar_scalars)
def test_degree_is_additive(a, b):
    if a.is_zero() or b.is_zero():
        assert (a * b).is_zero()
    else:
        assert (a * b).degree == a.degree + b.degree


def test_canonical_form_strips_trailing_zeros():
    assert HbarScalar([1, 0, 0]) == HbarScalar([1])
    assert HbarScalar([0, 0]).degree == -1


def test_hbar_over_i():
    assert hbar_over_i(1) == HbarScalar([0, GaussianRational(0, -1)])
    assert hbar_over_i(2) == HbarScalar([0, 0, -1])
    assert hbar_eval(hbar_over_i(3), 2.0) == pytest.approx((2.0 / 1j) ** 3)


def test_derivative():
    s = HbarScalar([1, 2, Fraction(1, 3)])
    assert s.derivative() == HbarScalar([2, Fraction(2, 3)])
