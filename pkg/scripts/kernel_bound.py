"""Largest |E_chi,theta(x, y)| over a lattice, for several chi and theta.

    python3 scripts/kernel_bound.py --L 20 --points 50
"""
import argparse

import numpy as np

from qdunkl.basis import frac_kernel_complex


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--L", type=float, default=20.0)
    ap.add_argument("--points", type=int, default=50)
    args = ap.parse_args()

    g = np.linspace(-args.L, args.L, args.points)
    X, Y = np.meshgrid(g, g, indexing="ij")
    print(" chi    theta    max|E|      at (x, y)")
    for chi in (0.0, 0.5, 1.0, 3.0):
        for theta in (0.2, 1.0, np.pi / 2, 2.5):
            A = np.abs(frac_kernel_complex(chi, theta, X, Y))
            i, j = np.unravel_index(int(np.argmax(A)), A.shape)
            print(f"{chi:4.1f}  {theta:6.3f}  {A[i, j]:.12f}  ({X[i, j]:.2f}, {Y[i, j]:.2f})")


if __name__ == "__main__":
    main()
