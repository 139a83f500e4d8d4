"""Geodesic curvature of the parallels xi = s + i C1 on the round sphere.

Two frame conventions: unit tangent and normal, and the frame
(1+|xi|^2)/(2 sqrt 2) (d_xi + d_xibar), i(...)(d_xi - d_xibar), whose vectors
have squared length 1/2. Compared with the value sqrt(2) C1.
"""

import argparse
import math

import numpy as np

from nkahler import tn


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--C1", type=float, nargs="+", default=[0.0, 0.25, 0.5, 1.0, 2.0, 4.0])
    ap.add_argument("--samples", type=int, default=101)
    args = ap.parse_args()
    sphere = tn.ConformalGeometry.sphere()
    ss = np.linspace(-2, 2, args.samples)
    print(f"{'C1':>6} {'unit mean':>12} {'unit std':>10} {'frame mean':>12} {'frame std':>10} {'sqrt2 C1':>10} {'ratio':>8}")
    for C1 in args.C1:
        curve = lambda s, C1=C1: complex(s, C1)  # noqa: E731
        k = np.array([tn.geodesic_curvature(sphere, curve)(s) for s in ss])
        kp = np.array([tn.geodesic_curvature(sphere, curve, "paper_frame")(s) for s in ss])
        ratio = math.sqrt(2) * C1 / kp.mean() if C1 else float("nan")
        print(f"{C1:6.2f} {k.mean():12.8f} {k.std():10.2e} {kp.mean():12.8f} {kp.std():10.2e} {math.sqrt(2) * C1:10.6f} {ratio:8.4f}")


if __name__ == "__main__":
    main()
