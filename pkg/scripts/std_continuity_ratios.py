"""Empirical growth of the standard ordered operators in the entire seminorms.

For random P, Q and a matrix element psi this tabulates
q_{0,c}(rho(P*Q) psi) / q_{0,c'}(psi) for several c' >= c.  The numerator is
computed term by term over the formal sum, which gives an upper bound.  Only
ratios are reported; no universal constant is claimed.
"""
import argparse
import csv
import random
import sys
from dataclasses import dataclass, field

import numpy as np

from starquant.algebra import catalog
from starquant.checks import random_homogeneous, random_matrix_element
from starquant.group_functions import catalog_rep, majorant_coeffs
from starquant.std_star import PhaseSpacePoly, rho_std_apply, std_star


@dataclass
class RatioConfig:
    algebra: str = "sl2"
    trials: int = 5
    order: int = 16
    hbar: complex = 0.5
    c_values: list = field(default_factory=lambda: [0.5, 1.0])
    c_prime_factors: list = field(default_factory=lambda: [1.0, 2.0, 4.0])
    seed: int = 0


def seminorm_bound(fn, c: float, order: int) -> float:
    terms = fn.terms if hasattr(fn, "terms") else [fn]
    total = np.zeros(order + 1)
    for term in terms:
        total += np.array(majorant_coeffs(term, None, order))
    return float(sum(x * c ** k for k, x in enumerate(total)))


def run(cfg: RatioConfig, out=sys.stdout):
    alg = catalog(cfg.algebra)
    rep = catalog_rep(alg)
    rng, rrng = np.random.default_rng(cfg.seed), random.Random(cfg.seed)
    writer = csv.writer(out)
    writer.writerow(["trial", "c", "c_prime", "q_product", "q_psi", "ratio"])
    for trial in range(cfg.trials):
        P = PhaseSpacePoly(alg, [(random_matrix_element(rep, rng), random_homogeneous(alg, 2, rrng, 2))])
        Q = PhaseSpacePoly(alg, [(random_matrix_element(rep, rng), random_homogeneous(alg, 1, rrng, 2))])
        psi = random_matrix_element(rep, rng)
        image = rho_std_apply(std_star(P, Q), psi, cfg.hbar)
        for c in cfg.c_values:
            num = seminorm_bound(image, c, cfg.order)
            for f in cfg.c_prime_factors:
                den = seminorm_bound(psi, c * f, cfg.order)
                writer.writerow([trial, c, c * f, f"{num:.6g}", f"{den:.6g}", f"{num / den:.6g}"])


def main():
    cfg = RatioConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--algebra", default=cfg.algebra)
    ap.add_argument("--trials", type=int, default=cfg.trials)
    ap.add_argument("--seed", type=int, default=cfg.seed)
    args = ap.parse_args()
    run(RatioConfig(algebra=args.algebra, trials=args.trials, seed=args.seed))


if __name__ == "__main__":
    main()
