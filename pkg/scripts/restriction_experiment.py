"""Truncated entire seminorm of an sl2 matrix element against the complex-group bound.

For each radius r the bound ||phi||_{K_r} sum_k (s/r)^k k^k/k! c^k must dominate
the truncated q_{0,c}(phi); the table shows by how much.
"""
import argparse
import csv
import sys
from dataclasses import dataclass, field

import numpy as np

from starquant.checks import sl2_matrix_element
from starquant.group_functions import entire_seminorm, restriction_bound


@dataclass
class RestrictionConfig:
    c: float = 0.5
    order: int = 20
    radii: list = field(default_factory=lambda: [1.0, 2.0, 4.0, 8.0])
    functions: int = 3
    seed: int = 0


def run(cfg: RestrictionConfig, out=sys.stdout) -> bool:
    rng = np.random.default_rng(cfg.seed)
    writer = csv.writer(out)
    writer.writerow(["function", "r", "truncation", "bound", "slack"])
    ok = True
    for j in range(cfg.functions):
        phi = sl2_matrix_element(rng)
        trunc = entire_seminorm(phi, cfg.c, cfg.order).truncation
        for r in cfg.radii:
            bound = restriction_bound(phi, cfg.c, cfg.order, r)
            ok &= trunc <= bound
            writer.writerow([j, r, f"{trunc:.6g}", f"{bound:.6g}", f"{bound / trunc:.4g}"])
    return ok


def main():
    cfg = RestrictionConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--c", type=float, default=cfg.c)
    ap.add_argument("--order", type=int, default=cfg.order)
    ap.add_argument("--seed", type=int, default=cfg.seed)
    args = ap.parse_args()
    ok = run(RestrictionConfig(c=args.c, order=args.order, seed=args.seed))
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
