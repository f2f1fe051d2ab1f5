"""Empirical continuity ratios p_{R,c}(p*q) / (p_{R,c'}(p) p_{R,c'}(q)) for the Gutt product.

No universal constant is asserted; the table only shows how the ratio behaves
on random inputs as c' grows relative to c.
"""
import argparse
import csv
import random
import sys
from dataclasses import dataclass, field

from starquant.algebra import catalog
from starquant.checks import random_tensor
from starquant.gutt import seminorm_ratio_table


@dataclass
class TableConfig:
    algebra: str = "sl2"
    pairs: int = 10
    max_degree: int = 4
    R: float = 1.0
    hbar: float = 1.0
    c_values: list = field(default_factory=lambda: [0.5, 1.0, 2.0])
    c_prime_factors: list = field(default_factory=lambda: [1.0, 2.0, 4.0, 8.0])
    seed: int = 0


def run(cfg: TableConfig, out=sys.stdout):
    alg = catalog(cfg.algebra)
    rng = random.Random(cfg.seed)
    writer = csv.writer(out)
    writer.writerow(["pair", "c", "c_prime", "lhs", "rhs", "ratio"])
    worst: dict = {}
    for pair in range(cfg.pairs):
        p = random_tensor(alg, cfg.max_degree, rng)
        q = random_tensor(alg, cfg.max_degree, rng)
        for c in cfg.c_values:
            rows = seminorm_ratio_table(p, q, [c], [c * f for f in cfg.c_prime_factors], cfg.R, cfg.hbar)
            for _, cp, lhs, rhs, ratio in rows:
                writer.writerow([pair, c, cp, f"{lhs:.6g}", f"{rhs:.6g}", f"{ratio:.6g}"])
                worst[(c, cp)] = max(worst.get((c, cp), 0.0), ratio)
    return worst


def main():
    cfg = TableConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--algebra", default=cfg.algebra)
    ap.add_argument("--pairs", type=int, default=cfg.pairs)
    ap.add_argument("--R", type=float, default=cfg.R)
    ap.add_argument("--seed", type=int, default=cfg.seed)
    args = ap.parse_args()
    worst = run(TableConfig(algebra=args.algebra, pairs=args.pairs, R=args.R, seed=args.seed))
    for (c, cp), r in sorted(worst.items()):
        print(f"# worst ratio c={c} c'={cp}: {r:.4g}", file=sys.stderr)


if __name__ == "__main__":
    main()
