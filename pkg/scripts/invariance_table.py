"""Homology invariance sweep over exponents, scale factors and charts.

    python3 scripts/invariance_table.py [--points 200] [--seed 0]

Prints one row per (p, lambda, chart) with the largest relative change of
the chart coordinates between a solution and its homolog.
"""

import argparse
from dataclasses import dataclass, field

from tfhomology.invariance import invariance_sweep


@dataclass
class SweepConfig:
    ps: list = field(default_factory=lambda: [1.2, 1.5, 2.0, 2.5, 3.0])
    lambdas: list = field(default_factory=lambda: [0.5, 2.0])
    points: int = 200
    seed: int = 0


def run(cfg):
    print(f"{'p':>4} {'lambda':>6} {'chart':>9} {'homolog':>10} {'mapped':>10}")
    worst = 0.0
    for p in cfg.ps:
        for lam in cfg.lambdas:
            for r in invariance_sweep(p, lam, n_points=cfg.points, seed=cfg.seed):
                worst = max(worst, r.max_dev, r.mapped_dev)
                print(f"{p:4.1f} {lam:6.2f} {r.chart:>9} {r.max_dev:10.2e} {r.mapped_dev:10.2e}")
    print(f"worst relative deviation: {worst:.2e}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--points", type=int, default=SweepConfig.points)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = ap.parse_args()
    run(SweepConfig(points=args.points, seed=args.seed))


if __name__ == "__main__":
    main()
