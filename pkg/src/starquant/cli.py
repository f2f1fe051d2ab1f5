"""Command line front end.

Exit status: 0 when everything requested passed, 1 when a check failed,
2 on usage or input errors.  Output is deterministic for a fixed ``--seed``;
runtimes are only reported with ``--timing``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import checks
from .algebra import CATALOG_NAMES, NONABELIAN, algebra_from_json, algebra_to_json, catalog, validate_algebra
from .errors import StarQuantError
from .group_functions import (GroupElementExpr, MatrixElementFunction, catalog_rep, coeff_eval, complex_extension_eval,
                              constant_function, entire_seminorm, extension_at_product, lie_taylor_eval,
                              majorant_coeffs)
from .gutt import classical_limit, gutt_star, poisson_bracket
from .parse import parse_abelian, parse_polynomial, parse_tensor
from .scalars import GaussianRational, HbarScalar, hbar_over_i
from .serialize import complex_to_json, dumps, phase_to_json, rep_from_json, tensor_to_json
from .std_star import PhaseSpacePoly, operator_consistency_check, std_star, std_star_abelian


class UsageError(Exception):
    pass


# --- argument helpers -------------------------------------------------------


def _scalar(text: str):
    c = HbarScalar.coerce(next(iter(parse_polynomial(text, []).values()), HbarScalar()))
    if c.degree > 0:
        raise UsageError(f"{text!r}: vector entries cannot contain hbar")
    return c.coefficient(0)


def _vector(text: str) -> list:
    """Comma separated exact entries such as "1,-1/2,i"."""
    entries = [_scalar(t) for t in text.split(",")]
    return [x.re if x.im == 0 else x for x in entries]


def _floats(text: str) -> np.ndarray:
    try:
        return np.array([complex(t.replace("i", "j")) if "i" in t else float(t) for t in text.split(",")])
    except ValueError:
        raise UsageError(f"cannot read numeric vector {text!r}") from None


def _hbar(text: str) -> complex:
    try:
        re, im = (float(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--hbar expects re,im, got {text!r}") from None
    return complex(re, im)


def _algebra(args, default="sl2"):
    if getattr(args, "algebra_json", None):
        return algebra_from_json(Path(args.algebra_json).read_text())
    return catalog(args.algebra or default)


def _json_arg(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad JSON: {exc}") from None


def _function(data, alg, rep):
    if data in ("one", 1, "1"):
        return constant_function(alg)
    if "rep" in data:
        rep = rep_from_json(data["rep"], alg)
    left = data["left"] if isinstance(data["left"], list) else _vector(data["left"])
    right = data["right"] if isinstance(data["right"], list) else _vector(data["right"])
    return MatrixElementFunction(rep, left, right)


def _phase(data, alg) -> PhaseSpacePoly:
    rep = catalog_rep(alg)
    terms = []
    for t in data["terms"]:
        sym = parse_tensor(t["sym"], alg) if isinstance(t["sym"], str) else None
        if sym is None:
            from .serialize import tensor_from_json
            sym = tensor_from_json(t["sym"], alg)
        terms.append((_function(t.get("fn", "one"), alg, rep), sym))
    return PhaseSpacePoly(alg, terms)


def _group(text: str | None, alg) -> GroupElementExpr:
    if not text:
        return GroupElementExpr()
    factors = [_floats(part) for part in text.split(";")]
    for f in factors:
        if len(f) != alg.dim:
            raise UsageError(f"group point factors need {alg.dim} coordinates")
    return GroupElementExpr.exp(*factors)


def _matrix_element(args, alg):
    rep = catalog_rep(alg) if not args.rep else rep_from_json(_json_arg(args.rep), alg)
    left = _vector(args.left) if args.left else [1] + [0] * (rep.d - 1)
    right = _vector(args.right) if args.right else [1] + [0] * (rep.d - 1)
    return MatrixElementFunction(rep, left, right)


# --- output -------------------------------------------------------------------


def _emit(args, payload, rows=None, header=None):
    if args.format == "csv":
        if rows is None:
            raise UsageError("this command has no CSV form; use --format json")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = dumps(payload) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _tensor_payload(t):
    return {"string": t.to_string(), "tensor": tensor_to_json(t)}


# --- commands -----------------------------------------------------------------


def cmd_algebra(args) -> int:
    if args.action == "catalog":
        names = [n for n in CATALOG_NAMES if n != "abelian(n)"] + ["abelian(2)"]
        payload = {"catalog": list(CATALOG_NAMES),
                   "algebras": {n: algebra_to_json(catalog(n)) for n in names}}
        _emit(args, payload)
        return 0
    try:
        alg = _algebra(args)
        validate_algebra(alg)
    except StarQuantError as exc:
        _emit(args, {"valid": False, "error": type(exc).__name__, "message": str(exc)})
        return 1
    _emit(args, {"valid": True, "algebra": algebra_to_json(alg)})
    return 0


def cmd_gutt(args) -> int:
    alg = _algebra(args)
    p, q = parse_tensor(args.p, alg), parse_tensor(args.q, alg)
    if args.action == "star":
        _emit(args, _tensor_payload(gutt_star(p, q)))
    elif args.action == "poisson":
        _emit(args, _tensor_payload(poisson_bracket(p, q)))
    else:
        r = gutt_star(p, q)
        _emit(args, {"classical": _tensor_payload(classical_limit(r)),
                     "poisson": _tensor_payload(poisson_bracket(p, q))})
    return 0


def cmd_std(args) -> int:
    if args.action == "abelian":
        F, G = parse_abelian(args.f, args.n), parse_abelian(args.g, args.n)
        lam = HbarScalar.hbar(1, GaussianRational(0, 1)) if args.lam == "i*hbar" else hbar_over_i(1)
        r = std_star_abelian(F, G, lam)
        terms = [{"q_exp": list(a), "p_exp": list(b), "coeff": [complex_to_json(x) for x in c.coeffs]}
                 for (a, b), c in sorted(r.terms.items())]
        _emit(args, {"string": r.to_string(), "terms": terms, "lambda": args.lam})
        return 0
    alg = _algebra(args)
    P, Q = _phase(_json_arg(args.P), alg), _phase(_json_arg(args.Q), alg)
    if args.action == "star":
        _emit(args, phase_to_json(std_star(P, Q)))
        return 0
    rng = np.random.default_rng(args.seed)
    psi = _function(_json_arg(args.psi), alg, catalog_rep(alg)) if args.psi else \
        checks.random_matrix_element(catalog_rep(alg), rng, 3)
    points = [checks.random_group_element(alg, rng) for _ in range(args.samples)]
    res = operator_consistency_check(P, Q, psi, points, _hbar(args.hbar))
    tol = args.tol if args.tol is not None else 1e-9
    passed = res.deviation <= tol
    _emit(args, {"deviation": res.deviation, "samples": res.samples, "tolerance": tol, "passed": passed,
                 "worst_point": res.worst_point})
    return 0 if passed else 1


def cmd_taylor(args) -> int:
    alg = _algebra(args)
    phi = _matrix_element(args, alg)
    g = _group(args.point, alg)
    x = _floats(args.direction) if args.direction else np.zeros(alg.dim)
    if len(x) != alg.dim:
        raise UsageError(f"--direction needs {alg.dim} coordinates")
    direct = coeff_eval(phi, g * GroupElementExpr.exp(x))
    rows = []
    for N in range(args.order + 1):
        val = lie_taylor_eval(phi, g, x, N)
        rows.append([N, repr(val.real), repr(val.imag), repr(abs(val - direct))])
    _emit(args, {"direct": complex_to_json(direct),
                 "series": [{"order": r[0], "value": [r[1], r[2]], "abs_error": r[3]} for r in rows]},
          rows, ["order", "re", "im", "abs_error"])
    return 0


def cmd_majorant(args) -> int:
    alg = _algebra(args)
    phi = _matrix_element(args, alg)
    g = _group(args.point, alg)
    coeffs = majorant_coeffs(phi, g, args.order)
    payload = {"coefficients": [repr(c) for c in coeffs]}
    if args.c is not None and args.point is None:
        sem = entire_seminorm(phi, args.c, args.order)
        payload["seminorm"] = {"c": args.c, "truncation": repr(sem.truncation), "tail_bound": repr(sem.tail_bound),
                               "r": repr(sem.r)}
    _emit(args, payload, [[k, repr(c)] for k, c in enumerate(coeffs)], ["k", "c_k"])
    return 0


def cmd_extend(args) -> int:
    alg = _algebra(args)
    phi = _matrix_element(args, alg)
    g = _group(args.point, alg)
    chi, xi = _floats(args.chi), _floats(args.xi)
    if len(chi) != alg.dim or len(xi) != alg.dim:
        raise UsageError(f"--chi and --xi need {alg.dim} coordinates")
    val = complex_extension_eval(phi, g, chi, xi)
    taylor = lie_taylor_eval(phi, g, chi + 1j * xi, args.order)
    prod = extension_at_product(phi, g, chi, xi)
    _emit(args, {"extension": complex_to_json(val), "taylor": complex_to_json(taylor),
                 "product_form": complex_to_json(prod), "order": args.order})
    return 0


def _run_suite(args, name) -> list:
    kw = {"seed": args.seed}
    if args.trials is not None:
        key = {"associativity": "trials", "pbw-roundtrip": "trials", "abelian": "trials", "polarization": "trials",
               "hbar-degree": "trials", "limits": "pairs", "seminorm": "pairs", "operator": "samples",
               "taylor": "trials", "cauchy": "instances", "extension": "trials"}.get(name)
        if key:
            kw[key] = args.trials
    if args.max_degree is not None and name in ("associativity", "pbw-roundtrip", "limits", "abelian", "seminorm",
                                                "hbar-degree", "polarization"):
        kw["max_degree"] = args.max_degree
    if args.tol is not None and name in ("operator", "taylor", "extension"):
        kw["tol"] = args.tol
    if name == "operator":
        kw["hbar"] = _hbar(args.hbar)
    fn = checks.SUITES[name]
    if name == "first-order":
        return [fn()]
    if name in checks.ALGEBRA_SUITES:
        algebras = [args.algebra] if args.algebra else list(NONABELIAN)
        return [fn(algebra=a, **kw) for a in algebras]
    return [fn(**kw)]


def cmd_check(args) -> int:
    reports = _run_suite(args, args.suite)
    dicts = []
    for r, a in zip(reports, [args.algebra] * len(reports) if args.algebra else NONABELIAN):
        d = r.to_dict(include_runtime=args.timing)
        if args.suite in checks.ALGEBRA_SUITES:
            d["algebra"] = a
        dicts.append(d)
    ok = all(r.passed for r in reports)
    header = ["name", "algebra", "passed", "deviation", "samples", "tolerance", "inputs_digest", "counterexample"]
    rows = [[d["name"], d.get("algebra", ""), d["passed"], repr(d["deviation"]), d["samples"], d["tolerance"],
             d["inputs_digest"], d["counterexample"] or ""] for d in dicts]
    _emit(args, {"passed": ok, "reports": dicts}, rows, header)
    return 0 if ok else 1


def cmd_cauchy(args) -> int:
    kw = {"seed": args.seed}
    if args.trials is not None:
        kw["instances"] = args.trials
    r = checks.check_cauchy(**kw)
    _emit(args, r.to_dict(include_runtime=args.timing),
          [[r.name, r.passed, repr(r.deviation), r.samples]], ["name", "passed", "violations", "samples"])
    return 0 if r.passed else 1


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="catalog name: heisenberg, sl2, so3, axb or abelian(n)")
    common.add_argument("--algebra-json", help="path to an algebra in JSON form (overrides --algebra)")
    common.add_argument("--hbar", default="1,0", help="numeric hbar as re,im")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--timing", action="store_true", help="include runtimes (makes output nondeterministic)")

    fn_args = argparse.ArgumentParser(add_help=False)
    fn_args.add_argument("--left", help="left vector w, comma separated exact entries")
    fn_args.add_argument("--right", help="right vector v, comma separated exact entries")
    fn_args.add_argument("--rep", help="representation JSON (inline or @file); default: catalog representation")
    fn_args.add_argument("--point", help="group point exp(x1)...exp(xk) as x1;...;xk, each comma separated")
    fn_args.add_argument("--order", type=int, default=10)

    parser = argparse.ArgumentParser(prog="starquant", description="Gutt and standard ordered star products.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", parents=[common])
    p.add_argument("action", choices=("validate", "catalog"))
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("gutt", parents=[common])
    p.add_argument("action", choices=("star", "poisson", "limits"))
    p.add_argument("--p", required=True, help="tensor expression, e.g. \"q^2*p + 1/2*hbar*c\"")
    p.add_argument("--q", required=True)
    p.set_defaults(func=cmd_gutt)

    p = sub.add_parser("std", parents=[common])
    p.add_argument("action", choices=("star", "abelian", "check-operator"))
    p.add_argument("--P", help="phase space polynomial JSON (inline or @file)")
    p.add_argument("--Q")
    p.add_argument("--psi", help="matrix element JSON for check-operator")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--f")
    p.add_argument("--g")
    p.add_argument("--lam", choices=("i*hbar", "hbar/i"), default="i*hbar")
    p.set_defaults(func=cmd_std)

    p = sub.add_parser("taylor", parents=[common, fn_args])
    p.add_argument("--direction", help="algebra coordinates x, comma separated (real or complex like 0.1+0.2i)")
    p.set_defaults(func=cmd_taylor)

    p = sub.add_parser("majorant", parents=[common, fn_args])
    p.add_argument("--c", type=float, default=None, help="also report the entire seminorm q_{0,c}")
    p.set_defaults(func=cmd_majorant)

    p = sub.add_parser("extend", parents=[common, fn_args])
    p.add_argument("--chi", required=True)
    p.add_argument("--xi", required=True)
    p.set_defaults(func=cmd_extend, order=24)

    p = sub.add_parser("cauchy-check", parents=[common])
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(func=cmd_cauchy)

    p = sub.add_parser("check", parents=[common])
    p.add_argument("suite", choices=sorted(checks.SUITES))
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(func=cmd_check)
    return parser


def _validate(args):
    if args.command == "std":
        need = ("f", "g") if args.action == "abelian" else ("P", "Q")
        missing = [f"--{k}" for k in need if getattr(args, k) is None]
        if missing:
            raise UsageError(f"std {args.action} needs {' '.join(missing)}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        return args.func(args)
    except (UsageError, StarQuantError, KeyError, ValueError, OSError) as exc:
        sys.stderr.write(f"starquant: error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
