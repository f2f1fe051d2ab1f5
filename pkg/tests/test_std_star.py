import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starquant.algebra import catalog
from starquant.checks import random_matrix_element, random_tensor
from starquant.errors import FiberConstantRequired, GroupDataMismatch
from starquant.group_functions import (GroupElementExpr, MatrixElementFunction, catalog_rep, coeff_eval,
                                       constant_function, lie_derive_word, polynomial_function, to_jet,
                                       unipotent_rep)
from starquant.gutt import gutt_star
from starquant.parse import parse_abelian, parse_tensor
from starquant.scalars import GaussianRational, HbarScalar, hbar_over_i
from starquant.std_star import (LAMBDA_DEFAULT, AbelianPhasePoly, PhaseSpacePoly, abelian_to_phase,
                                operator_consistency_check, phase_to_abelian, rho_std_apply, semiclassical_from_commutator,
                                semiclassical_std, std_star, std_star_abelian, std_star_literal)
from starquant.sym_tensor import SymTensor

R1 = catalog("abelian(1)")
HBAR = 0.7 + 0.2j


def points(alg, count=4, seed=0):
    rng = np.random.default_rng(seed)
    return [(GroupElementExpr.exp(rng.normal(size=alg.dim) * 0.4), rng.normal(size=alg.dim)) for _ in range(count)]


def assert_same(P, Q, hbar=HBAR):
    for g, mu in points(P.algebra):
        a, b = P.evaluate(g, mu, hbar), Q.evaluate(g, mu, hbar)
        assert abs(a - b) <= 1e-10 * max(1.0, abs(b))


def q_poly(size=3):
    return polynomial_function(unipotent_rep(1, size), size, {(1,): 1})


def test_rho_examples():
    alg = catalog("sl2")
    rep = catalog_rep(alg)
    phi = MatrixElementFunction(rep, [1.0, 2.0], [0.5, -1.0])
    psi = MatrixElementFunction(rep, [0.3, 0.1], [1.0, 1.0])
    g = GroupElementExpr.exp([0.1, 0.2, -0.3])
    assert rho_std_apply(PhaseSpacePoly.function(phi), psi, HBAR)(g) == pytest.approx(phi(g) * psi(g))
    e = PhaseSpacePoly.fiber(parse_tensor("e", alg))
    assert rho_std_apply(e, psi, GaussianRational(0, 1))(g) == pytest.approx(lie_derive_word(psi, (1,))(g))
    square = polynomial_function(unipotent_rep(1, 3), 3, {(2,): 1})
    out = rho_std_apply(PhaseSpacePoly.fiber(parse_tensor("e1", R1)), square, 0.5)
    t = 1.3
    assert out(GroupElementExpr.exp([t])) == pytest.approx(0.5 / 1j * 2 * t)


def test_left_linearity_and_fiber_product():
    alg = catalog("heisenberg")
    rep = catalog_rep(alg)
    rng = np.random.default_rng(1)
    phi, psi = random_matrix_element(rep, rng), random_matrix_element(rep, rng)
    q = parse_tensor("q*p + c^2", alg)
    assert_same(std_star(PhaseSpacePoly.function(phi), PhaseSpacePoly.of(psi, q)), PhaseSpacePoly.of(phi * psi, q))
    p1, p2 = parse_tensor("q^2", alg), parse_tensor("p*c + q", alg)
    assert_same(std_star(PhaseSpacePoly.fiber(p1), PhaseSpacePoly.fiber(p2)), PhaseSpacePoly.fiber(gutt_star(p1, p2)))


def test_unit():
    alg = catalog("so3")
    rep = catalog_rep(alg)
    P = PhaseSpacePoly.of(random_matrix_element(rep, np.random.default_rng(2)), parse_tensor("L1*L2 + L3", alg))
    one = PhaseSpacePoly.function(constant_function(alg))
    assert_same(std_star(one, P), P)
    assert_same(std_star(P, one), P)


def test_momentum_times_position():
    q = q_poly()
    lhs = std_star(PhaseSpacePoly.fiber(parse_tensor("e1", R1)), PhaseSpacePoly.function(q))
    expected = PhaseSpacePoly(R1, [(q, parse_tensor("e1", R1)),
                                   (constant_function(R1), SymTensor.one(R1).scale(hbar_over_i(1)))])
    assert_same(lhs, expected)
    F, G = parse_abelian("p", 1), parse_abelian("q", 1)
    assert phase_to_abelian(lhs) == std_star_abelian(F, G, hbar_over_i(1))


@pytest.mark.parametrize("name", ["heisenberg", "sl2", "axb"])
def test_grouped_factorization_matches_permutation_sum(name):
    alg = catalog(name)
    rep = catalog_rep(alg)
    rng, rrng = np.random.default_rng(4), random.Random(4)
    P = PhaseSpacePoly(alg, [(random_matrix_element(rep, rng), random_tensor(alg, 3, rrng, 2))])
    Q = PhaseSpacePoly(alg, [(random_matrix_element(rep, rng), random_tensor(alg, 2, rrng, 2))])
    assert_same(std_star(P, Q), std_star_literal(P, Q))


abelian_terms = st.dictionaries(
    st.tuples(st.tuples(st.integers(0, 2)), st.tuples(st.integers(0, 2))),
    st.integers(-3, 3).filter(bool), min_size=1, max_size=3)


@settings(max_examples=25)
@given(abelian_terms, abelian_terms, abelian_terms)
def test_abelian_closed_form_is_associative(f, g, h):
    F, G, H = (AbelianPhasePoly(1, t) for t in (f, g, h))
    for lam in (LAMBDA_DEFAULT, hbar_over_i(1)):
        assert std_star_abelian(std_star_abelian(F, G, lam), H, lam) == std_star_abelian(F, std_star_abelian(G, H, lam),
                                                                                          lam)


@settings(max_examples=25)
@given(abelian_terms, abelian_terms)
def test_abelian_factorization_matches_closed_form(f, g):
    F, G = AbelianPhasePoly(1, f), AbelianPhasePoly(1, g)
    got = phase_to_abelian(std_star(abelian_to_phase(F, R1), abelian_to_phase(G, R1)))
    assert got == std_star_abelian(F, G, hbar_over_i(1))


def test_abelian_two_dimensions():
    R2 = catalog("abelian(2)")
    F, G = parse_abelian("q1*p1*p2 + p2^2", 2), parse_abelian("q1^2*q2 + hbar*q2", 2)
    got = phase_to_abelian(std_star(abelian_to_phase(F, R2), abelian_to_phase(G, R2)))
    assert got == std_star_abelian(F, G, hbar_over_i(1))


def test_closed_form_conventions():
    p, q = parse_abelian("p", 1), parse_abelian("q", 1)
    comm = std_star_abelian(p, q) - std_star_abelian(q, p)
    assert comm == AbelianPhasePoly(1, {((0,), (0,)): LAMBDA_DEFAULT})
    assert std_star_abelian(p, q).to_string() == "(i*hbar) + (1)*q*p"


def test_semiclassical_examples():
    q = q_poly()
    P = PhaseSpacePoly.fiber(parse_tensor("e1", R1))
    bracket = semiclassical_std(P, PhaseSpacePoly.function(q))
    assert_same(bracket, PhaseSpacePoly.function(constant_function(R1)))
    assert semiclassical_std(PhaseSpacePoly.function(q), PhaseSpacePoly.function(q)).terms == []
    const = PhaseSpacePoly.function(constant_function(R1, 1))
    assert semiclassical_std(PhaseSpacePoly.of(q, parse_tensor("e1", R1)), const).terms == []
    with pytest.raises(FiberConstantRequired):
        semiclassical_std(P, P)


@pytest.mark.parametrize("name", ["heisenberg", "sl2"])
def test_semiclassical_is_first_order_commutator(name):
    alg = catalog(name)
    rep = catalog_rep(alg)
    rng, rrng = np.random.default_rng(5), random.Random(5)
    P = PhaseSpacePoly(alg, [(random_matrix_element(rep, rng), random_tensor(alg, 2, rrng, 2))])
    Q = PhaseSpacePoly.function(random_matrix_element(rep, rng))
    assert_same(semiclassical_std(P, Q), semiclassical_from_commutator(P, Q))


@pytest.mark.parametrize("name", ["abelian(1)", "heisenberg", "sl2", "so3", "axb"])
def test_operator_consistency(name):
    alg = catalog(name)
    rep = catalog_rep(alg) if not alg.is_abelian() else unipotent_rep(alg.dim, 3)
    rng, rrng = np.random.default_rng(6), random.Random(6)
    P = PhaseSpacePoly(alg, [(random_matrix_element(rep, rng), random_tensor(alg, 2, rrng, 2))])
    Q = PhaseSpacePoly(alg, [(random_matrix_element(rep, rng), random_tensor(alg, 2, rrng, 2))])
    psi = random_matrix_element(rep, rng, 2)
    pts = [GroupElementExpr.exp(rng.normal(size=alg.dim) * 0.5) for _ in range(20)]
    res = operator_consistency_check(P, Q, psi, pts, HBAR)
    assert res.deviation <= (1e-12 if alg.is_abelian() else 1e-9)


def test_jet_as_second_factor():
    alg = catalog("sl2")
    rep = catalog_rep(alg)
    rng = np.random.default_rng(7)
    phi, psi = random_matrix_element(rep, rng), random_matrix_element(rep, rng)
    P = PhaseSpacePoly.of(phi, parse_tensor("e*f + h", alg))
    full = std_star(P, PhaseSpacePoly.function(psi))
    jet = std_star(PhaseSpacePoly.of(to_jet(phi, 0), parse_tensor("e*f + h", alg)),
                   PhaseSpacePoly.function(to_jet(psi, 3)))
    mu = [0.3, -0.2, 0.5]
    assert jet.evaluate(None, mu, HBAR) == pytest.approx(full.evaluate(None, mu, HBAR))


def test_mismatched_data():
    a, b = catalog("sl2"), catalog("heisenberg")
    with pytest.raises(GroupDataMismatch):
        std_star(PhaseSpacePoly.fiber(SymTensor.one(a)), PhaseSpacePoly.fiber(SymTensor.one(b)))
    rep = catalog_rep(a)
    phi = MatrixElementFunction(rep, [1.0, 0.0], [0.0, 1.0])
    with pytest.raises(GroupDataMismatch):
        std_star(PhaseSpacePoly.of(to_jet(phi, 2), parse_tensor("e", a)),
                 PhaseSpacePoly.function(to_jet(phi, 2, GroupElementExpr.exp([0.1, 0, 0]))))


def test_exact_hbar_keeps_evaluation_exact():
    F = abelian_to_phase(parse_abelian("q^2*p", 1), R1)
    out = rho_std_apply(F, q_poly(), GaussianRational(0, 1))
    assert out(GroupElementExpr.exp([2])) == pytest.approx(4)
    assert coeff_eval(q_poly(), GroupElementExpr.exp([2])) == pytest.approx(2)
    assert HbarScalar.coerce(1) == HbarScalar([1])
