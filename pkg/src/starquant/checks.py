"""Property-check suites with machine-readable reports.

Each ``check_*`` function is deterministic given its config (seeded RNGs) and
returns a ``CheckReport``.  ``passed`` is exactly ``deviation <= tolerance``;
exact suites count failures, so their deviation is 0 or a positive count.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import NONABELIAN, LieAlgebraSpec, catalog
from .group_functions import (GroupElementExpr, MatrixElementFunction, catalog_rep, cauchy_check, coeff_eval,
                              complex_extension_eval, factorial_estimate_holds, lie_taylor_eval,
                              op_norm, unipotent_rep)
from .gutt import classical_limit, gutt_star, kks_bracket, poisson_bracket
from .parse import parse_tensor
from .pbw import pbw_desymmetrize, pbw_symmetrize
from .scalars import GaussianRational, HbarScalar, hbar_over_i
from .std_star import (AbelianPhasePoly, PhaseSpacePoly, abelian_to_phase, operator_consistency_check,
                       phase_to_abelian, std_star, std_star_abelian)
from .sym_tensor import (SymTensor, exact_l1_proj_norm, monomials_of_degree, polarize, polynomial_evaluator,
                         sym_product)


@dataclass
class CheckReport:
    name: str
    inputs_digest: str
    passed: bool
    deviation: float
    samples: int
    runtime: float
    tolerance: float = 0.0
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self, include_runtime: bool = True) -> dict:
        out = asdict(self)
        if not include_runtime:
            out.pop("runtime")
        return out


def digest(params: dict) -> str:
    return hashlib.sha256(json.dumps(params, sort_keys=True, default=str).encode()).hexdigest()[:16]


def _report(name, params, deviation, samples, t0, tol=0.0, counterexample=None, **details) -> CheckReport:
    return CheckReport(name, digest(params), bool(deviation <= tol), float(deviation), samples,
                       time.perf_counter() - t0, tol, counterexample, details)


# --- random exact data -------------------------------------------------------


def random_coeff(rng: random.Random) -> GaussianRational:
    den = rng.randint(1, 4)
    return GaussianRational(Fraction(rng.randint(-5, 5), den), Fraction(rng.randint(-3, 3), den))


def random_homogeneous(alg: LieAlgebraSpec, degree: int, rng: random.Random, max_terms: int = 3) -> SymTensor:
    monos = list(monomials_of_degree(alg.dim, degree))
    terms = {}
    for a in rng.sample(monos, min(len(monos), rng.randint(1, max_terms))):
        c = random_coeff(rng)
        terms[a] = c if not c.is_zero() else GaussianRational(1)
    return SymTensor(alg, terms)


def random_tensor(alg: LieAlgebraSpec, max_degree: int, rng: random.Random, max_terms: int = 4) -> SymTensor:
    out = SymTensor(alg, {})
    for _ in range(rng.randint(1, max_terms)):
        out = out + random_homogeneous(alg, rng.randint(0, max_degree), rng, 1)
    return out


# --- gutt star ----------------------------------------------------------------


def check_associativity(algebra: str = "sl2", trials: int = 50, max_degree: int = 9, seed: int = 0) -> CheckReport:
    """(p*q)*r == p*(q*r) exactly on random homogeneous triples of total degree <= max_degree."""
    params = dict(algebra=algebra, trials=trials, max_degree=max_degree, seed=seed)
    t0 = time.perf_counter()
    alg = catalog(algebra)
    rng = random.Random(seed)
    failures, first = 0, None
    for _ in range(trials):
        total = rng.randint(0, max_degree)
        cuts = sorted(rng.randint(0, total) for _ in range(2))
        degs = (cuts[0], cuts[1] - cuts[0], total - cuts[1])
        p, q, r = (random_homogeneous(alg, d, rng) for d in degs)
        if gutt_star(gutt_star(p, q), r) != gutt_star(p, gutt_star(q, r)):
            failures += 1
            first = first or f"p={p.to_string()}; q={q.to_string()}; r={r.to_string()}"
    return _report("associativity", params, failures, trials, t0, counterexample=first)


def check_first_order() -> CheckReport:
    """q*p = q v p + (hbar/2i) c on the Heisenberg algebra and e*f = e v f + (hbar/2i) h on sl2."""
    t0 = time.perf_counter()
    half = hbar_over_i(1) / 2
    failures = []
    for name, x, y, z in (("heisenberg", "q", "p", "c"), ("sl2", "e", "f", "h")):
        alg = catalog(name)
        lhs = gutt_star(parse_tensor(x, alg), parse_tensor(y, alg))
        rhs = parse_tensor(f"{x}*{y}", alg) + parse_tensor(z, alg).scale(half)
        if lhs != rhs:
            failures.append(f"{name}: {lhs.to_string()}")
    return _report("first-order", {}, len(failures), 2, t0,
                   counterexample=failures[0] if failures else None)


def check_limits(algebra: str = "sl2", pairs: int = 200, max_degree: int = 4, bracket_trials: int = 30,
                 seed: int = 0) -> CheckReport:
    """Classical limit, Poisson bracket on generators, Jacobi and Leibniz, all exact."""
    params = dict(algebra=algebra, pairs=pairs, max_degree=max_degree, bracket_trials=bracket_trials, seed=seed)
    t0 = time.perf_counter()
    alg = catalog(algebra)
    rng = random.Random(seed)
    problems = []
    for _ in range(pairs):
        p, q = random_tensor(alg, max_degree, rng), random_tensor(alg, max_degree, rng)
        if classical_limit(gutt_star(p, q)) != sym_product(classical_limit(p), classical_limit(q)):
            problems.append(f"classical limit: p={p.to_string()}; q={q.to_string()}")
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = poisson_bracket(SymTensor.generator(alg, i), SymTensor.generator(alg, j))
            rhs = SymTensor(alg, {tuple(int(t == k) for t in range(alg.dim)): x for k, x in alg.bracket_basis(i, j)})
            if lhs != rhs:
                problems.append(f"generator bracket ({alg.names[i]}, {alg.names[j]})")
    for _ in range(bracket_trials):
        p, q, r = (random_tensor(alg, max_degree, rng, 2) for _ in range(3))
        pb = poisson_bracket
        jac = pb(p, pb(q, r)) + pb(q, pb(r, p)) + pb(r, pb(p, q))
        if not jac.is_zero():
            problems.append(f"Jacobi: p={p.to_string()}; q={q.to_string()}; r={r.to_string()}")
        if pb(p, sym_product(q, r)) != sym_product(pb(p, q), r) + sym_product(q, pb(p, r)):
            problems.append(f"Leibniz: p={p.to_string()}; q={q.to_string()}; r={r.to_string()}")
        if pb(p, q) != kks_bracket(p, q):
            problems.append(f"linear Poisson structure: p={p.to_string()}; q={q.to_string()}")
    samples = pairs + alg.dim ** 2 + bracket_trials
    return _report("limits", params, len(problems), samples, t0,
                   counterexample=problems[0] if problems else None)


def check_pbw_roundtrip(algebra: str = "sl2", trials: int = 100, max_degree: int = 8, seed: int = 0) -> CheckReport:
    params = dict(algebra=algebra, trials=trials, max_degree=max_degree, seed=seed)
    t0 = time.perf_counter()
    alg = catalog(algebra)
    rng = random.Random(seed)
    failures, first = 0, None
    for _ in range(trials):
        p = random_tensor(alg, max_degree, rng)
        if pbw_desymmetrize(pbw_symmetrize(p)) != p:
            failures += 1
            first = first or p.to_string()
    return _report("pbw-roundtrip", params, failures, trials, t0, counterexample=first)


def check_hbar_degree(algebra: str = "sl2", trials: int = 100, max_degree: int = 5, seed: int = 0) -> CheckReport:
    """Star product coefficients are HbarScalars with deg_hbar <= deg p + deg q."""
    params = dict(algebra=algebra, trials=trials, max_degree=max_degree, seed=seed)
    t0 = time.perf_counter()
    alg = catalog(algebra)
    rng = random.Random(seed)
    failures, first = 0, None
    for _ in range(trials):
        p, q = random_tensor(alg, max_degree, rng), random_tensor(alg, max_degree, rng)
        r = gutt_star(p, q)
        bound = max(p.degree, 0) + max(q.degree, 0) + max(p.hbar_degree, 0) + max(q.hbar_degree, 0)
        ok = all(isinstance(c, HbarScalar) for c in r.terms.values()) and r.hbar_degree <= bound
        if not ok:
            failures += 1
            first = first or f"p={p.to_string()}; q={q.to_string()}"
    return _report("hbar-degree", params, failures, trials, t0, counterexample=first)


# --- seminorms and polarization -------------------------------------------------


def check_seminorm(algebra: str = "sl2", pairs: int = 200, max_degree: int = 4, seed: int = 0) -> CheckReport:
    """Monomials have l1 projective norm 1; p_{0,c}(p v q) <= p_{0,c}(p) p_{0,c}(q), both exact."""
    params = dict(algebra=algebra, pairs=pairs, max_degree=max_degree, seed=seed)
    t0 = time.perf_counter()
    alg = catalog(algebra)
    rng = random.Random(seed)
    problems = []
    for k in range(6):
        for a in monomials_of_degree(alg.dim, k):
            if exact_l1_proj_norm(SymTensor.monomial(alg, a)) != {k: 1}:
                problems.append(f"monomial norm {a}")

    def p0c(t, c):
        return sum((c ** k * x for k, x in exact_l1_proj_norm(t).items()), Fraction(0))

    for _ in range(pairs):
        p = _real_tensor(alg, max_degree, rng)
        q = _real_tensor(alg, max_degree, rng)
        c = Fraction(rng.randint(1, 12), 4)
        if p0c(sym_product(p, q), c) > p0c(p, c) * p0c(q, c):
            problems.append(f"submultiplicativity c={c}: p={p.to_string()}; q={q.to_string()}")
    return _report("seminorm", params, len(problems), pairs, t0,
                   counterexample=problems[0] if problems else None)


def _real_tensor(alg, max_degree, rng):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        a = [0] * alg.dim
        for _ in range(rng.randint(0, max_degree)):
            a[rng.randrange(alg.dim)] += 1
        terms[tuple(a)] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return SymTensor(alg, terms)


def check_polarization(dim: int = 3, max_degree: int = 5, trials: int = 20, sup_samples: int = 200,
                       seed: int = 0) -> CheckReport:
    """Exact reconstruction of symmetric forms and the sampled polarization estimate.

    For a k-homogeneous P with symmetric form L: L(v, ..., v) = P(v) and
    L(e_{j_1}, ..., e_{j_k}) = coeff_a a! / k!, both exact.  The estimate
    |L(v_1..v_k)| <= k^k / k! sup_{|v|_1 <= 1} |P(v)| is checked with the sup
    sampled over random unit vectors together with the points (sum eps_j v_j)/k.
    """
    params = dict(dim=dim, max_degree=max_degree, trials=trials, sup_samples=sup_samples, seed=seed)
    t0 = time.perf_counter()
    alg = catalog(f"abelian({dim})")
    rng = random.Random(seed)
    nrng = np.random.default_rng(seed)
    problems = []
    worst = 0.0
    count = 0
    for k in range(1, max_degree + 1):
        for _ in range(trials):
            count += 1
            P_t = random_homogeneous(alg, k, rng, 4)
            P = polynomial_evaluator(P_t)
            v = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(dim)]
            if polarize(P, [v] * k) != P(v):
                problems.append(f"diagonal k={k}: {P_t.to_string()}")
            a = next(iter(P_t.terms))
            basis = [[Fraction(int(t == j)) for t in range(dim)] for j in range(dim)]
            vecs = [basis[j] for j, x in enumerate(a) for _ in range(x)]
            expect = P_t.terms[a].coefficient(0) * math.prod(math.factorial(x) for x in a) / math.factorial(k)
            if polarize(P, vecs) != expect:
                problems.append(f"basis values k={k}: {P_t.to_string()}")
            # estimate
            num = polynomial_evaluator(P_t, hbar=0.0)
            us = [nrng.normal(size=dim) for _ in range(k)]
            us = [u / np.abs(u).sum() for u in us]
            lval = abs(polarize(lambda x: complex(num(tuple(x))), us))
            pts = [np.sum([e * u for e, u in zip(eps, us)], axis=0) / k
                   for eps in itertools.product((1, -1), repeat=k)]
            for _ in range(sup_samples):
                u = nrng.normal(size=dim)
                pts.append(u / np.abs(u).sum())
            sup = max(abs(complex(num(tuple(x)))) for x in pts)
            bound = k ** k / math.factorial(k) * sup
            ratio = lval / bound if bound else 0.0
            worst = max(worst, ratio)
            if lval > bound * (1 + 1e-12):
                problems.append(f"estimate k={k}: ratio {ratio}")
    return _report("polarization", params, len(problems), count, t0,
                   counterexample=problems[0] if problems else None, worst_estimate_ratio=worst)


# --- standard ordered star product --------------------------------------------


def _random_abelian(n: int, max_degree: int, rng: random.Random) -> AbelianPhasePoly:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        total = rng.randint(0, max_degree)
        e = [0] * (2 * n)
        for _ in range(total):
            e[rng.randrange(2 * n)] += 1
        terms[(tuple(e[:n]), tuple(e[n:]))] = random_coeff(rng)
    return AbelianPhasePoly(n, terms)


def _derivative_q(poly: dict, k: int) -> dict:
    out = {}
    for (a,), c in poly.items():
        if a >= k:
            out[(a - k,)] = out.get((a - k,), 0) + c * math.perm(a, k)
    return out


def check_abelian(trials: int = 40, max_degree: int = 5, seed: int = 0) -> CheckReport:
    """Factorization path against the closed form on T*R^n, n in {1, 2}, plus the phi p^n * psi p^m identity.

    The closed form runs with lam = hbar/i, the parameter matching the
    quantization weight (hbar/i)^k.  The phi p^n identity is checked for both
    paths: the closed form with its default lam = i hbar and the factorization
    path with lam = hbar/i.
    """
    params = dict(trials=trials, max_degree=max_degree, seed=seed)
    t0 = time.perf_counter()
    rng = random.Random(seed)
    problems = []
    lam_std = hbar_over_i(1)
    for n in (1, 2):
        alg = catalog(f"abelian({n})")
        for _ in range(trials):
            F, G = _random_abelian(n, max_degree, rng), _random_abelian(n, max_degree, rng)
            fact = phase_to_abelian(std_star(abelian_to_phase(F, alg), abelian_to_phase(G, alg)))
            if fact != std_star_abelian(F, G, lam_std):
                problems.append(f"n={n}: F={F.to_string()}; G={G.to_string()}")
    alg = catalog("abelian(1)")
    for n_p, m_p in itertools.product(range(4), repeat=2):
        phi = {(rng.randint(0, 3),): random_coeff(rng), (0,): random_coeff(rng)}
        psi = {(rng.randint(0, 3),): random_coeff(rng), (rng.randint(0, 3),): random_coeff(rng)}
        F = AbelianPhasePoly(1, {(a, (n_p,)): c for a, c in phi.items()})
        G = AbelianPhasePoly(1, {(a, (m_p,)): c for a, c in psi.items()})
        for lam, label in ((HbarScalar.hbar(1, GaussianRational(0, 1)), "closed form"), (lam_std, "factorization")):
            expect = {}
            for k in range(n_p + 1):
                dpsi = _derivative_q(psi, k)
                for (a,), ca in phi.items():
                    for (b,), cb in dpsi.items():
                        key = ((a + b,), (n_p + m_p - k,))
                        expect[key] = expect.get(key, HbarScalar()) + lam ** k * (ca * cb * math.comb(n_p, k))
            expect = AbelianPhasePoly(1, expect)
            if label == "closed form":
                got = std_star_abelian(F, G)
            else:
                got = phase_to_abelian(std_star(abelian_to_phase(F, alg), abelian_to_phase(G, alg)))
            if got != expect:
                problems.append(f"{label} p^{n_p} * p^{m_p} identity: F={F.to_string()}; G={G.to_string()}")
    return _report("abelian", params, len(problems), 2 * trials + 16, t0,
                   counterexample=problems[0] if problems else None)


def random_matrix_element(rep, rng: np.random.Generator, factors: int = 1):
    """Product of ``factors`` matrix elements with small integer vectors."""
    out = None
    for _ in range(factors):
        w = rng.integers(-2, 3, rep.d).tolist()
        v = rng.integers(-2, 3, rep.d).tolist()
        if not any(w):
            w[0] = 1
        if not any(v):
            v[-1] = 1
        f = MatrixElementFunction(rep, w, v)
        out = f if out is None else out * f
    return out


def random_group_element(alg, rng: np.random.Generator, scale: float = 0.5) -> GroupElementExpr:
    return GroupElementExpr.exp(*(rng.normal(size=alg.dim) * scale for _ in range(2)))


def check_operator(algebra: str = "sl2", samples: int = 20, hbar: complex = 0.7 + 0.3j, tol: float = 1e-9,
                   seed: int = 0) -> CheckReport:
    """rho(P*Q) psi against rho(P) rho(Q) psi at sampled group elements."""
    params = dict(algebra=algebra, samples=samples, hbar=str(hbar), seed=seed)
    t0 = time.perf_counter()
    alg = catalog(algebra)
    rep = catalog_rep(alg) if not alg.is_abelian() else unipotent_rep(alg.dim, 3)
    rng = np.random.default_rng(seed)
    rrng = random.Random(seed)
    P = PhaseSpacePoly(alg, [(random_matrix_element(rep, rng), random_homogeneous(alg, 2, rrng, 2)),
                             (random_matrix_element(rep, rng), random_homogeneous(alg, 1, rrng, 2))])
    Q = PhaseSpacePoly(alg, [(random_matrix_element(rep, rng), random_homogeneous(alg, 2, rrng, 2)),
                             (random_matrix_element(rep, rng), random_tensor(alg, 1, rrng, 2))])
    psi = random_matrix_element(rep, rng, 2 if alg.is_abelian() else 3)
    points = [random_group_element(alg, rng) for _ in range(samples)]
    res = operator_consistency_check(P, Q, psi, points, hbar)
    scale = max(abs(x) for x in res.rhs)
    return _report("operator", params, res.deviation, samples, t0, tol,
                   counterexample=None if res.deviation <= tol else f"sample {res.worst_point}",
                   rhs_scale=scale)


# --- group functions -----------------------------------------------------------


def sl2_matrix_element(rng: np.random.Generator) -> MatrixElementFunction:
    rep = catalog_rep("sl2")
    return MatrixElementFunction(rep, rng.normal(size=2), rng.normal(size=2))


def check_lie_taylor(trials: int = 20, radius: float = 0.3, order: int = 20, tol: float = 1e-10,
                     floor: float = 1e-14, seed: int = 0) -> CheckReport:
    """Order-20 truncation against direct evaluation; errors non-increasing over N in {5, 10, 15, 20}.

    Monotonicity is judged above a relative floating point floor ``floor``.
    """
    params = dict(trials=trials, radius=radius, order=order, seed=seed)
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst = 0.0
    problems = []
    for _ in range(trials):
        phi = sl2_matrix_element(rng)
        x = rng.uniform(-radius, radius, 3)
        x[rng.integers(3)] = radius * rng.choice([-1, 1])
        exact = coeff_eval(phi, GroupElementExpr.exp(x))
        scale = max(abs(exact), 1e-300)
        errs = [abs(lie_taylor_eval(phi, None, x, N) - exact) / scale for N in (5, 10, 15, order)]
        worst = max(worst, errs[-1])
        for a, b in zip(errs, errs[1:]):
            if b > max(a, floor):
                problems.append(f"non-monotone errors {errs} at x={x.tolist()}")
                break
    dev = worst if not problems else math.inf
    return _report("taylor", params, dev, trials, t0, tol,
                   counterexample=problems[0] if problems else None)


def check_cauchy(instances: int = 100, max_k: int = 6, radii=(1.0, 2.0, 4.0), kr_samples: int = 64,
                 seed: int = 0) -> CheckReport:
    """Lie theoretic Cauchy estimates on sampled sl2 instances plus the exact factorial sub-check."""
    params = dict(instances=instances, max_k=max_k, radii=list(radii), kr_samples=kr_samples, seed=seed)
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    rep = catalog_rep("sl2")
    violations = []
    worst = 0.0
    for t in range(instances):
        phi = sl2_matrix_element(rng)
        k = t % (max_k + 1)
        r = radii[t % len(radii)]
        dirs = []
        for _ in range(k):
            x = rng.normal(size=3) + 1j * rng.normal(size=3)
            dirs.append(x / op_norm(rep.algebra_matrix(x)))
        k0 = [rng.normal(size=3) * 0.3 for _ in range(3)]
        g = GroupElementExpr.exp(rng.normal(size=3) * 0.3)
        inst = cauchy_check(phi, g, k0[0], dirs, r, k0[1:], kr_samples, rng)
        worst = max(worst, inst.lhs / inst.rhs if inst.rhs else 0.0)
        if inst.violated:
            violations.append(f"instance {t}: k={k}, r={r}, lhs={inst.lhs}, rhs={inst.rhs}")
    factorial_failures = [n for n in range(1, 21) if not factorial_estimate_holds(n)]
    dev = len(violations) + len(factorial_failures)
    first = violations[0] if violations else (f"factorial n={factorial_failures[0]}" if factorial_failures else None)
    return _report("cauchy", params, dev, instances, t0, counterexample=first, worst_ratio=worst)


def check_extension(trials: int = 50, radius: float = 0.2, order: int = 24, tol: float = 1e-8,
                    restrict_tol: float = 1e-12, seed: int = 0) -> CheckReport:
    """Holomorphic extension against the order-24 Taylor value at chi + i xi, and its real restriction."""
    params = dict(trials=trials, radius=radius, order=order, seed=seed)
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst = 0.0
    worst_restrict = 0.0
    for _ in range(trials):
        phi = sl2_matrix_element(rng)
        chi = rng.uniform(-radius, radius, 3)
        xi = rng.uniform(-radius, radius, 3)
        val = complex_extension_eval(phi, None, chi, xi)
        taylor = lie_taylor_eval(phi, None, chi + 1j * xi, order)
        worst = max(worst, abs(val - taylor) / max(abs(taylor), 1e-300))
        real = complex_extension_eval(phi, None, chi, np.zeros(3))
        direct = coeff_eval(phi, GroupElementExpr.exp(chi))
        worst_restrict = max(worst_restrict, abs(real - direct) / max(abs(direct), 1e-300))
    dev = worst if worst_restrict <= restrict_tol else math.inf
    return _report("extension", params, dev, trials, t0, tol, restriction_deviation=worst_restrict)


SUITES = {
    "associativity": check_associativity,
    "first-order": check_first_order,
    "limits": check_limits,
    "pbw-roundtrip": check_pbw_roundtrip,
    "abelian": check_abelian,
    "operator": check_operator,
    "taylor": check_lie_taylor,
    "cauchy": check_cauchy,
    "extension": check_extension,
    "seminorm": check_seminorm,
    "polarization": check_polarization,
    "hbar-degree": check_hbar_degree,
}

ALGEBRA_SUITES = ("associativity", "limits", "pbw-roundtrip", "operator", "seminorm", "hbar-degree")
NONABELIAN_CATALOG = NONABELIAN
