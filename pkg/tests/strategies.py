"""Hypothesis strategies for exact algebraic data."""
from fractions import Fraction

from hypothesis import strategies as st

from starquant.algebra import catalog
from starquant.scalars import GaussianRational, HbarScalar
from starquant.sym_tensor import SymTensor

ALGEBRAS = ["heisenberg", "sl2", "so3", "axb", "abelian(2)"]

fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gaussians = st.builds(GaussianRational, fractions, fractions)
hbar_scalars = st.lists(gaussians, max_size=3).map(HbarScalar)


@st.composite
def tensors(draw, algebra_name=None, max_degree=3, max_terms=3, hbar=False):
    name = algebra_name or draw(st.sampled_from(ALGEBRAS))
    alg = catalog(name)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        deg = draw(st.integers(0, max_degree))
        a = [0] * alg.dim
        for _ in range(deg):
            a[draw(st.integers(0, alg.dim - 1))] += 1
        terms[tuple(a)] = draw(hbar_scalars if hbar else gaussians)
    return SymTensor(alg, terms)


@st.composite
def tensor_tuples(draw, k, max_degree=3, max_terms=3, hbar=False):
    name = draw(st.sampled_from(ALGEBRAS))
    return tuple(draw(tensors(name, max_degree, max_terms, hbar)) for _ in range(k))
