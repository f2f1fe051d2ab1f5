"""JSON forms of tensors, PBW elements, representations and phase space polynomials.

Exact scalars are written as strings "p/q"; complex numbers as ["re", "im"];
hbar polynomials as lists of complex entries, lowest power first.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .algebra import LieAlgebraSpec
from .errors import ParseError
from .group_functions import Jet, MatrixRep
from .pbw import PBWElement
from .scalars import GaussianRational, HbarScalar
from .sym_tensor import SymTensor


def _num(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def complex_to_json(z) -> list:
    if isinstance(z, GaussianRational):
        return [str(z.re), str(z.im)]
    if isinstance(z, (int, Fraction)):
        return [str(z), "0"]
    z = complex(z)
    return [_num(z.real), _num(z.imag)]


def complex_from_json(pair):
    re, im = pair
    try:
        return GaussianRational(Fraction(str(re)), Fraction(str(im)))
    except ValueError:
        return complex(float(re), float(im))


def hbar_to_json(c: HbarScalar) -> list:
    return [complex_to_json(x) for x in c.coeffs]


def hbar_from_json(data) -> HbarScalar:
    return HbarScalar([complex_from_json(x) for x in data])


def tensor_to_json(p: SymTensor) -> dict:
    return {"terms": [{"exp": list(a), "coeff": hbar_to_json(p.terms[a])} for a in sorted(p.terms)]}


def tensor_from_json(data, algebra: LieAlgebraSpec) -> SymTensor:
    try:
        return SymTensor(algebra, {tuple(t["exp"]): hbar_from_json(t["coeff"]) for t in data["terms"]})
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad tensor JSON: {exc}") from None


def pbw_to_json(u: PBWElement) -> dict:
    return {"terms": [{"ordered_exp": list(b), "coeff": hbar_to_json(u.terms[b])} for b in sorted(u.terms)]}


def pbw_from_json(data, algebra: LieAlgebraSpec) -> PBWElement:
    return PBWElement(algebra, {tuple(t["ordered_exp"]): hbar_from_json(t["coeff"]) for t in data["terms"]})


def rep_to_json(rep: MatrixRep) -> dict:
    mats = rep.exact if rep.exact is not None else rep.rho
    return {"d": rep.d, "rho": [[[complex_to_json(x) for x in row] for row in m] for m in mats]}


def rep_from_json(data, algebra: LieAlgebraSpec) -> MatrixRep:
    mats = []
    for m in data["rho"]:
        rows = [[complex_from_json(x) for x in row] for row in m]
        if any(isinstance(x, complex) for row in rows for x in row):
            rows = [[complex(x) for x in row] for row in rows]
        mats.append(rows)
    rep = MatrixRep(algebra, mats)
    if rep.d != int(data["d"]):
        raise ParseError(f"declared d={data['d']} but matrices are {rep.d}x{rep.d}")
    return rep


def _vec_to_json(v) -> list:
    return [complex_to_json(x) for x in v]


def fn_to_json(fn) -> dict:
    if isinstance(fn, Jet):
        return {"jet": {"order": fn.order,
                        "coeffs": [{"word": [x + 1 for x in w], "value": complex_to_json(c)}
                                   for w, c in sorted(fn.coeffs.items(), key=lambda t: (len(t[0]), t[0]))]}}
    out = {"rep": rep_to_json(fn.rep), "left": _vec_to_json(fn.w), "right": _vec_to_json(fn.v)}
    if fn.base is not None:
        out["base"] = [[complex_to_json(x) for x in row] for row in fn.base]
    return out


def phase_to_json(P) -> dict:
    return {"terms": [{"fn": fn_to_json(fn), "sym": tensor_to_json(sym)} for fn, sym in P.terms]}


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)
