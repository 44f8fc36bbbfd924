"""Product ratios for Gaussians against the p = 1 constants.

Part 1: the ground-state Gaussian e^(-|x|^2/2) against the stated constant
((2chi1+1)+(2chi2+1))^2 and against (chi1+chi2+2)^2, the value it attains.
Part 2: the squeezed Gaussian e^(-s|x|^2/2) at theta1 = theta2 = theta;
the measured ratio against (chi1+chi2+2)^2 is printed next to the closed
form sin^2 + cos^2/s^2, which drops below 1 for theta != pi/2.

    python3 scripts/heisenberg_scan.py
"""
import argparse
import math

from qdunkl import frqdt2d as F
from qdunkl import uncertainty as U
from qdunkl.quadrature import Grid2D


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--N", type=int, default=96)
    ap.add_argument("--theta", type=float, default=1.0)
    args = ap.parse_args()

    print("chi1  chi2   stated C   ratio(stated)   ratio(ground state)")
    for chi1, chi2 in [(0.0, 0.0), (0.5, 1.0), (2.0, 0.3)]:
        grid = Grid2D.build(chi1, chi2, args.N)
        spec = F.TransformSpec(chi1, chi2, args.theta, 0.7)
        rep = U.heisenberg_check(F.gaussian_field(0.5, grid), spec)
        print(f"{chi1:4.1f}  {chi2:4.1f}  {rep.sharp_constant:9.3f}   {rep.ratio:13.6f}"
              f"   {rep.extra['ratio_ground_state_constant']:.6f}")

    print()
    print(f"squeezed Gaussian, theta1 = theta2 = {args.theta}")
    print("   s    chi    measured    sin^2 + cos^2/s^2")
    for chi in (0.0, 0.5):
        grid = Grid2D.build(chi, chi, args.N)
        spec = F.TransformSpec(chi, chi, args.theta, args.theta)
        for s in (1.0, 1.5, 2.0, 3.0):
            rep = U.heisenberg_check(U.squeezed_gaussian(grid, s), spec)
            meas = rep.extra["ratio_ground_state_constant"]
            print(f"{s:4.1f}  {chi:5.2f}  {meas:10.6f}    {U.gaussian_product_ratio(s, args.theta):.6f}")
    print(f"limit s -> inf: sin^2 theta = {math.sin(args.theta) ** 2:.6f}")


if __name__ == "__main__":
    main()
