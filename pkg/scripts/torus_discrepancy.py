"""Compare the torus family in L(H^3) under three choices of mu2.

beta     mu2 = -sin v e^{iv}/C1   (satisfies the beta condition)
printed  mu2 =  sin v e^{iv}/C1   (as displayed)
swapped  mu1 = sin u e^{iu}/C1, mu2 = C1 e^{iv}/sin v   (the labels exchanged)

For each: grid pullback residuals, plane incidences of the endpoint curves,
radii, and the number of common points of the two boundary circles.
"""

import argparse
import cmath
import math

import numpy as np

from nkahler import geodesics as gs
from nkahler.surfaces import SurfaceMap, tensor_grid


def variants(C1):
    return {
        "beta": (lambda u: gs.torus_mu1(C1, u), lambda v: gs.torus_mu2(C1, v, "beta")),
        "printed": (lambda u: gs.torus_mu1(C1, u), lambda v: gs.torus_mu2(C1, v, "printed")),
        "swapped": (
            lambda u: math.sin(u) * cmath.exp(1j * u) / C1,
            lambda v: C1 * cmath.exp(1j * v) / math.sin(v),
        ),
    }


def study(C1, n):
    tc = gs.torus_circles(C1)
    us = gs.torus_parameter_samples(400)
    grid = tensor_grid(np.linspace(0.2, 1.2, n), np.linspace(1.6, 2.9, n))
    rows = []
    for name, (m1, m2) in variants(C1).items():
        S = SurfaceMap(lambda u, v, m1=m1, m2=m2: gs.GeodesicH3(m1(u), m2(v)))
        r = gs.surface_grid_residuals_h3(S, grid)
        a, b = [m1(u) for u in us], [m2(u) for u in us]
        inc1, inc2 = tc.incidence(a, b)
        c1 = gs.Circle3.fit([gs.stereographic_array(m) for m in a])
        c2 = gs.Circle3.fit([-gs.stereographic_array(m) for m in b])
        rows.append((name, r.max_asd, r.min_sd, r.verdict().value, inc1, inc2, c1.radius, c2.radius, gs.circle_intersection_count(c1, c2)))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--C1", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    ap.add_argument("--grid", type=int, default=20)
    args = ap.parse_args()
    head = f"{'C1':>5} {'variant':8} {'max_asd':>11} {'min_sd':>11} {'verdict':8} {'inc1':>11} {'inc2':>11} {'r1':>8} {'r2':>8} {'common':>6}"
    print(head)
    print("-" * len(head))
    for C1 in args.C1:
        for row in study(C1, args.grid):
            name, asd, sd, verdict, i1, i2, r1, r2, cnt = row
            print(f"{C1:5.2f} {name:8} {asd:11.3e} {sd:11.3e} {verdict:8} {i1:11.3e} {i2:11.3e} {r1:8.5f} {r2:8.5f} {cnt!s:>6}")
        print(f"{'':5} expected radius 1/sqrt(1+C1^2) = {1 / math.sqrt(1 + C1 * C1):.5f}")


if __name__ == "__main__":
    main()
