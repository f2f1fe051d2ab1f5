import json

import numpy as np
from hypothesis import given

from starquant.algebra import catalog
from starquant.group_functions import MatrixElementFunction, catalog_rep, to_jet
from starquant.pbw import pbw_symmetrize
from starquant.serialize import (complex_from_json, complex_to_json, dumps, fn_to_json, hbar_from_json, hbar_to_json,
                                 pbw_from_json, pbw_to_json, phase_to_json, rep_from_json, rep_to_json,
                                 tensor_from_json, tensor_to_json)
from starquant.std_star import PhaseSpacePoly
from strategies import gaussians, hbar_scalars, tensors


def through_json(data):
    return json.loads(json.dumps(data))


@given(gaussians)
def test_complex_roundtrip(z):
    assert complex_from_json(through_json(complex_to_json(z))) == z


def test_float_complex_roundtrip():
    assert complex_from_json(complex_to_json(0.1 + 2.5j)) == 0.1 + 2.5j


@given(hbar_scalars)
def test_hbar_roundtrip(c):
    assert hbar_from_json(through_json(hbar_to_json(c))) == c


@given(tensors(hbar=True))
def test_tensor_and_pbw_roundtrip(p):
    assert tensor_from_json(through_json(tensor_to_json(p)), p.algebra) == p
    u = pbw_symmetrize(p)
    assert pbw_from_json(through_json(pbw_to_json(u)), p.algebra) == u


def test_rep_roundtrip():
    for name in ("heisenberg", "sl2", "so3", "axb"):
        rep = catalog_rep(name)
        back = rep_from_json(through_json(rep_to_json(rep)), catalog(name))
        assert all(np.array_equal(a, b) for a, b in zip(rep.rho, back.rho))


def test_function_json_is_deterministic():
    rep = catalog_rep("sl2")
    phi = MatrixElementFunction(rep, [1, 2], [0, 1])
    P = PhaseSpacePoly.function(phi)
    assert dumps(phase_to_json(P)) == dumps(phase_to_json(P))
    jet = fn_to_json(to_jet(phi, 2))
    assert jet["jet"]["coeffs"][1]["word"] == [1]
