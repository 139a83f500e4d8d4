"""The family xi = s e^{iC0} + xi0, eta = (t e^{iC0} + eta0) e^{-2u} on curved bases.

Reports the ASD pullback residual (zero for beta-surfaces) and the null
residual over a grid for several (C0, xi0, eta0), and, for comparison, the
surface xi = s, eta = w + i c (1 + s^2)/2 over the round sphere.
"""

import argparse

import numpy as np

from nkahler import tn
from nkahler.surfaces import SurfaceMap, tensor_grid

PARAMS = [
    (0.0, 0j, 0j),
    (0.4, 0j, 0j),
    (0.0, 0.3, 0j),
    (0.0, 0j, 0.3j),
    (0.4, 0.1 + 0.05j, 0.3 - 0.2j),
]


def null_residual(geom, S, s, t):
    X, Y = S.checked_tangents(s, t)
    G = tn.metric_matrix(geom, S.point(s, t))
    return max(abs(X @ G @ X), abs(Y @ G @ Y), abs(X @ G @ Y)) / float(X @ X + Y @ Y)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--grid", type=int, default=25)
    args = ap.parse_args()
    grid = tensor_grid(np.linspace(-0.5, 0.5, args.grid), np.linspace(-1, 1, args.grid))
    print(f"{'base':10} {'C0':>5} {'xi0':>14} {'eta0':>14} {'max_asd':>10} {'max_null':>10} verdict")
    for name in ("flat", "sphere", "hyperbolic"):
        geom = tn.ConformalGeometry.by_name(name)
        for C0, xi0, eta0 in PARAMS:
            S = tn.beta_surface_tn(geom, tn.BetaParamsTN(C0, xi0, eta0))
            r = tn.surface_grid_residuals(geom, S, grid)
            nr = max(null_residual(geom, S, s, t) for s, t in grid)
            print(f"{name:10} {C0:5.2f} {xi0!s:>14} {eta0!s:>14} {r.max_asd:10.2e} {nr:10.2e} {r.verdict().value}")
    sphere = tn.ConformalGeometry.sphere()
    for c in (0.0, 0.5, -1.0):
        S = SurfaceMap(lambda s, w, c=c: tn.PointTN(s, complex(w, c * (1 + s * s) / 2)))
        r = tn.surface_grid_residuals(sphere, S, grid)
        print(f"sphere translated plane c={c:+.1f}: max_asd {r.max_asd:.2e}, verdict {r.verdict().value}")


if __name__ == "__main__":
    main()
