import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from oracles import expm_eig, expm_mpmath, majorant_by_words, word_derivative_fd
from starquant.algebra import catalog, change_of_basis
from starquant.errors import GroupDataMismatch, JetNotEvaluable, JetOrderExhausted, NonNormalizableBasis
from starquant.group_functions import (IDENTITY, GroupElementExpr, MatrixElementFunction, MatrixRep, catalog_rep,
                                       cauchy_check, coeff_eval, complex_extension_eval, constant_function,
                                       entire_seminorm, extension_at_product, factorial_estimate_holds,
                                       lie_derive_word, lie_taylor_eval, majorant_coeffs, majorant_coeffs_bruteforce,
                                       matrix_element_polynomial, op_norm, polynomial_function, restriction_bound,
                                       to_jet, unipotent_rep)

SL2 = catalog_rep("sl2")
R1 = unipotent_rep(1, 3)


def fundamental(w=(1, 0), v=(1, 0)):
    return MatrixElementFunction(SL2, list(w), list(v))


@pytest.mark.parametrize("name", ["heisenberg", "sl2", "so3", "axb", "abelian(2)"])
def test_catalog_reps_are_homomorphisms(name):
    catalog_rep(name).check()


def test_bad_rep_is_rejected():
    with pytest.raises(Exception):
        MatrixRep(catalog("sl2"), [[[1, 0], [0, -1]], [[0, 1], [0, 0]], [[0, 0], [0, 1]]])


def test_derivative_example():
    assert lie_derive_word(fundamental(), (0,))() == pytest.approx(1)


@pytest.mark.parametrize("word", [(0,), (1,), (2,), (1, 2), (2, 1), (0, 1, 2)])
def test_word_derivatives_match_finite_differences(word):
    phi = MatrixElementFunction(SL2, [0.3, -1.1], [0.7, 0.4])
    g = GroupElementExpr.exp([0.2, -0.1, 0.3])
    G = SL2.group_matrix(g)
    exact = coeff_eval(lie_derive_word(phi, word), g)
    assert abs(exact - word_derivative_fd(phi, SL2, word, G)) <= 1e-8 * max(1, abs(exact))


def test_word_order_is_composition():
    # Lie(e) Lie(f) - Lie(f) Lie(e) = Lie([e, f]) = Lie(h)
    phi = MatrixElementFunction(SL2, [0.3, -1.1], [0.7, 0.4])
    g = GroupElementExpr.exp([0.1, 0.2, 0.3])
    lhs = coeff_eval(lie_derive_word(phi, (1, 2)), g) - coeff_eval(lie_derive_word(phi, (2, 1)), g)
    assert lhs == pytest.approx(coeff_eval(lie_derive_word(phi, (0,)), g))


def test_coeff_eval_examples():
    assert coeff_eval(fundamental((2, 3), (5, 7))) == pytest.approx(31)
    t = polynomial_function(R1, 3, {(1,): 1})
    assert coeff_eval(t, GroupElementExpr.exp([3])) == pytest.approx(3)


@pytest.mark.parametrize("seed", range(5))
def test_matrix_exponential_against_independent_algorithms(seed):
    rng = np.random.default_rng(seed)
    so3 = catalog_rep("so3")
    x = rng.normal(size=3)
    M = so3.algebra_matrix(x)
    ours = so3.group_matrix(GroupElementExpr.exp(x))
    assert np.max(np.abs(ours - expm_eig(M))) <= 1e-12
    assert np.max(np.abs(ours - expm_mpmath(M))) <= 1e-12


def test_lie_taylor_examples():
    phi = fundamental((0.3, 1.0), (1.0, -0.5))
    assert lie_taylor_eval(phi, None, [0, 0, 0], 7) == pytest.approx(phi())
    sq = polynomial_function(R1, 3, {(2,): 1})
    assert lie_taylor_eval(sq, None, [0.5], 2) == pytest.approx(0.25, abs=1e-15)
    assert lie_taylor_eval(sq, None, [0.5], 1) == 0
    x = [0.3, -0.2, 0.1]
    direct = coeff_eval(phi, GroupElementExpr.exp(x))
    assert abs(lie_taylor_eval(phi, None, x, 20) - direct) <= 1e-10 * abs(direct)


@settings(max_examples=20)
@given(st.lists(st.floats(-0.3, 0.3), min_size=3, max_size=3), st.integers(1, 12))
def test_lie_taylor_error_is_bounded_by_majorant_tail(x, N):
    phi = fundamental((0.3, 1.0), (1.0, -0.5))
    direct = coeff_eval(phi, GroupElementExpr.exp(x))
    err = abs(lie_taylor_eval(phi, None, x, N) - direct)
    coeffs = majorant_coeffs(phi, None, N + 40)
    r = max(abs(t) for t in x)
    tail = sum(c * r ** k for k, c in enumerate(coeffs) if k > N)
    assert err <= tail * (1 + 1e-9) + 1e-15


def test_majorant_examples():
    one = constant_function(catalog("abelian(1)"))
    assert majorant_coeffs(one, None, 3) == [1.0, 0.0, 0.0, 0.0]
    t = polynomial_function(R1, 3, {(1,): 1})
    assert majorant_coeffs(t, None, 3) == pytest.approx([0, 1, 0, 0])


@pytest.mark.parametrize("name", ["heisenberg", "sl2", "so3", "axb"])
def test_majorant_matches_word_enumeration(name):
    rep = catalog_rep(name)
    rng = np.random.default_rng(3)
    phi = MatrixElementFunction(rep, rng.normal(size=rep.d), rng.normal(size=rep.d))
    ours = majorant_coeffs(phi, None, 5)
    assert ours == pytest.approx(majorant_by_words(phi, rep, 5), rel=1e-10, abs=1e-13)
    assert ours == pytest.approx(majorant_coeffs_bruteforce(phi, None, 5), rel=1e-10, abs=1e-13)


def test_heisenberg_majorant_against_finite_differences():
    rep = catalog_rep("heisenberg")
    phi = MatrixElementFunction(rep, [1, 0, 0], [0, 0, 1])
    coeffs = majorant_coeffs(phi, None, 2)
    fd = [sum(abs(word_derivative_fd(phi, rep, (i, j))) for i in range(3) for j in range(3)) / 2]
    assert coeffs[2] == pytest.approx(fd[0], rel=1e-7)
    assert coeffs[2] == pytest.approx(0.5)


def test_majorant_under_change_of_basis():
    """Passing to a basis f_i = A_ij e_j multiplies c_k by at most (max|A| n)^k."""
    A = [[1, 0, 0], [0, 1, 1], [0, 1, -1]]
    alg2 = change_of_basis(catalog("sl2"), A)
    rho2 = [sum(A[i][j] * SL2.rho[j] for j in range(3)) for i in range(3)]
    rep2 = MatrixRep(alg2, rho2)
    w, v = [0.4, -1.2], [0.9, 0.3]
    c = majorant_coeffs(MatrixElementFunction(SL2, w, v), None, 8)
    c2 = majorant_coeffs(MatrixElementFunction(rep2, w, v), None, 8)
    factor = max(abs(x) for row in A for x in row) * 3
    for k in range(9):
        assert c2[k] <= factor ** k * c[k] * (1 + 1e-12) + 1e-15


def test_entire_seminorm_examples():
    one = constant_function(catalog("abelian(1)"))
    res = entire_seminorm(one, 1.0, 5)
    assert (res.truncation, res.tail_bound) == (1.0, 0.0)
    t = polynomial_function(unipotent_rep(1, 2), 2, {(1,): 1})
    res = entire_seminorm(t, 2.0, 3)
    assert res.truncation == pytest.approx(2.0)
    assert res.tail_bound == 0.0


def test_sl2_seminorm_tail_is_rigorous_and_small():
    phi = fundamental((1, 0), (1, 0))
    res30 = entire_seminorm(phi, 1.0, 30)
    res60 = entire_seminorm(phi, 1.0, 60)
    assert res30.tail_bound < 1e-5
    assert abs(res60.truncation - res30.truncation) <= res30.tail_bound


@pytest.mark.xfail(strict=True, reason="the k^k/k! Cauchy tail with sup bound |w||v|e^r stays near 3e-6 for any r")
def test_sl2_seminorm_tail_below_one_millionth():
    assert entire_seminorm(fundamental(), 1.0, 30).tail_bound < 1e-6


def test_nonnormalizable_basis():
    rep = MatrixRep(catalog("abelian(2)"), [[[0, 1], [0, 0]], [[0, 0], [0, 0]]])
    phi = MatrixElementFunction(rep, [1.0, 0.0], [0.0, 1.0])
    # vanishes from order 2, so the tail is exactly zero even though e_2 acts as zero
    assert entire_seminorm(phi, 1.0, 3).tail_bound == 0.0
    rep = MatrixRep(catalog("abelian(2)"), [[[1, 0], [0, 2]], [[0, 0], [0, 0]]])
    with pytest.raises(NonNormalizableBasis):
        entire_seminorm(MatrixElementFunction(rep, [1.0, 1.0], [1.0, 1.0]), 1.0, 3)


def test_restriction_bound_dominates_truncation():
    phi = fundamental((0.5, 1.0), (1.0, 0.2))
    c, N = 0.5, 12
    trunc = entire_seminorm(phi, c, N).truncation
    for r in (1.0, 2.0, 4.0, 8.0):
        assert trunc <= restriction_bound(phi, c, N, r)


def test_jets():
    phi = fundamental((0.3, 1.0), (1.0, -0.5))
    jet = to_jet(phi, 3)
    assert jet.value((1, 2)) == pytest.approx(coeff_eval(lie_derive_word(phi, (1, 2))))
    with pytest.raises(JetOrderExhausted):
        jet.apply_word((0, 1, 2, 0))
    with pytest.raises(JetNotEvaluable):
        coeff_eval(jet, GroupElementExpr.exp([0.1, 0, 0]))
    psi = fundamental((1.0, 2.0), (0.5, 0.5))
    prod_jet = jet * to_jet(psi, 3)
    prod = phi * psi
    for word in [(), (0,), (1, 2), (2, 1, 0)]:
        assert prod_jet.value(word) == pytest.approx(coeff_eval(lie_derive_word(prod, word)))
    with pytest.raises(GroupDataMismatch):
        jet * to_jet(psi, 3, GroupElementExpr.exp([0.1, 0, 0]))


def test_product_of_matrix_elements_is_pointwise():
    phi, psi = fundamental((0.3, 1.0), (1.0, -0.5)), fundamental((1.0, 2.0), (0.5, 0.5))
    g = GroupElementExpr.exp([0.2, 0.4, -0.3])
    assert (phi * psi)(g) == pytest.approx(phi(g) * psi(g))
    assert (phi + psi)(g) == pytest.approx(phi(g) + psi(g))


def test_polynomial_roundtrip():
    rep = unipotent_rep(2, 3)
    poly = {(2, 1): 3, (0, 0): -1, (1, 2): 2}
    assert matrix_element_polynomial(polynomial_function(rep, 3, poly)) == poly


def test_cauchy_examples():
    rng = np.random.default_rng(0)
    phi = fundamental((0.3, 1.0), (1.0, -0.5))
    inst = cauchy_check(phi, None, [0.1, 0.2, 0.0], [], 1.0, rng=rng)
    assert not inst.violated and inst.lhs <= inst.sampled_sup
    x = np.array([1.0, 0.5, -0.3])
    d = x / op_norm(SL2.algebra_matrix(x))
    for r in (1.0, 2.0, 4.0):
        assert not cauchy_check(phi, None, [0, 0, 0], [d, d], r, rng=rng).violated
    with pytest.raises(ValueError):
        cauchy_check(phi, None, [0, 0, 0], [3 * d], 1.0, rng=rng)


def test_factorial_estimate():
    assert all(factorial_estimate_holds(n) for n in range(1, 41))


def test_extension_examples():
    phi = fundamental((0.3, 1.0), (1.0, -0.5))
    chi = np.array([0.1, -0.2, 0.05])
    xi = np.array([0.05, 0.1, -0.1])
    assert complex_extension_eval(phi, None, chi, 0 * xi) == pytest.approx(phi(GroupElementExpr.exp(chi)), rel=1e-12)
    val = complex_extension_eval(phi, None, chi, xi)
    assert val == pytest.approx(lie_taylor_eval(phi, None, chi + 1j * xi, 24), rel=1e-8)
    # the product form agrees with the Taylor value when chi and xi commute
    assert extension_at_product(phi, None, chi, 0.5 * chi) == pytest.approx(
        lie_taylor_eval(phi, None, chi + 0.5j * chi, 30), rel=1e-12)
    assert abs(extension_at_product(phi, None, chi, xi) - val) > 1e-6


def test_group_element_expression():
    g = GroupElementExpr.exp([0.1, 0, 0]) * GroupElementExpr.exp([0, 0.2, 0])
    M = SL2.group_matrix(g)
    assert np.allclose(M, expm(SL2.algebra_matrix([0.1, 0, 0])) @ expm(SL2.algebra_matrix([0, 0.2, 0])))
    assert IDENTITY.is_identity and not g.is_identity
