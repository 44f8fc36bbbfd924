"""Scan the oversampled-rule size M used by the quadrature path.

For each theta the quadrature matrix is built with a forced M and applied
to h_0 .. h_16; the error against e^(i n theta) h_n is printed next to the
M chosen by fine_size.

    python3 scripts/fine_rule_scan.py --chi 0.5 --N 48
"""
import argparse
import math

import numpy as np

from qdunkl.basis import hermite_table
from qdunkl.quadrature import build_rule
from qdunkl.transform1d import fine_size, quadrature_matrix


def eigen_error(chi, theta, N, M, nmax=16):
    rule = build_rule(chi, N)
    T = quadrature_matrix(chi, theta, rule, fine=M)
    H = hermite_table(nmax, chi, rule.nodes)
    err = 0.0
    for n in range(nmax + 1):
        err = max(err, float(np.max(np.abs(T @ H[n] - np.exp(1j * n * theta) * H[n]))))
    return err


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--chi", type=float, default=0.5)
    ap.add_argument("--N", type=int, default=48)
    ap.add_argument("--thetas", type=float, nargs="+", default=[0.1, 0.3, 1.0, math.pi / 2, 2.5, 3.0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[48, 128, 256, 512, 1024, 2048, 4096, 8192])
    args = ap.parse_args()

    rule = build_rule(args.chi, args.N)
    y_max = float(np.max(np.abs(rule.nodes)))
    print("theta   " + "".join(f"{M:>10d}" for M in args.sizes) + "   chosen     err(chosen)")
    for th in args.thetas:
        row = [eigen_error(args.chi, th, args.N, M) for M in args.sizes]
        Mc = fine_size(th, y_max, args.N)
        ec = eigen_error(args.chi, th, args.N, Mc)
        print(f"{th:6.3f}  " + "".join(f"{e:10.1e}" for e in row) + f"   {Mc:6d}     {ec:.1e}")


if __name__ == "__main__":
    main()
