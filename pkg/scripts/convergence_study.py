"""Error of the main checks as the per-axis node count N grows.

    python3 scripts/convergence_study.py --chi1 0.5 --chi2 1.0
"""
import argparse
import math

import numpy as np

from qdunkl import frqdt2d as F
from qdunkl.quadrature import Grid2D


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--chi1", type=float, default=0.5)
    ap.add_argument("--chi2", type=float, default=1.0)
    ap.add_argument("--theta1", type=float, default=math.pi / 3)
    ap.add_argument("--theta2", type=float, default=2 * math.pi / 5)
    ap.add_argument("--Ns", type=int, nargs="+", default=[16, 24, 32, 48, 64, 96])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    spec = F.TransformSpec(args.chi1, args.chi2, args.theta1, args.theta2)
    print(f"{'N':>4} {'gauss 0.8':>11} {'gauss 1.3':>11} {'plancherel':>11} {'inversion':>11} {'paths':>11}")
    for N in args.Ns:
        grid = Grid2D.build(args.chi1, args.chi2, N)
        g08 = F.gaussian_check(0.8, spec, grid).residual
        g13 = F.gaussian_check(1.3, spec, grid).residual
        f = F.random_bandlimited(grid, np.random.default_rng(args.seed), nmax=min(6, N // 2 - 1))
        pl = F.plancherel_check(f, spec).residual
        inv = F.inversion_check(f, spec).residual
        pa = F.path_agreement(f, spec).residual if N >= 16 + 8 else float("nan")
        print(f"{N:4d} {g08:11.2e} {g13:11.2e} {pl:11.2e} {inv:11.2e} {pa:11.2e}")


if __name__ == "__main__":
    main()
