"""Parametrized surfaces in a 4-dimensional chart and 2-form pullbacks.

A point type only needs a ``chart()`` method returning the four real chart
coordinates; a tangent type likewise returns the real tangent vector.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ImmersionError
from .linalg import RANK_TOL

FD_REL_STEP = 1e-5
CLASS_TOL = 1e-6


def fd_derivative(fun, x, h=None):
    """Fourth-order central difference of an array-valued function of one real."""
    if h is None:
        h = FD_REL_STEP * (1.0 + abs(x))
    f2p, f1p = fun(x + 2 * h), fun(x + h)
    f1m, f2m = fun(x - h), fun(x - 2 * h)
    return (-f2p + 8 * f1p - 8 * f1m + f2m) / (12 * h)


@dataclass(frozen=True)
class SurfaceMap:
    """(s, t) -> chart point, with an optional analytic Jacobian.

    ``jacobian(s, t)`` returns the pair (d/ds, d/dt) of tangent objects. When it
    is absent a fourth-order central stencil with step ``1e-5 (1 + |s|)`` is used.
    """

    f: Callable
    jacobian: Optional[Callable] = None
    name: str = "surface"

    def point(self, s, t):
        return self.f(s, t)

    def chart_point(self, s, t):
        return self.f(s, t).chart()

    def tangents(self, s, t):
        if self.jacobian is not None:
            ds, dt = self.jacobian(s, t)
            return ds.chart(), dt.chart()
        X = fd_derivative(lambda x: self.f(x, t).chart(), s)
        Y = fd_derivative(lambda y: self.f(s, y).chart(), t)
        return X, Y

    def fd_tangents(self, s, t):
        X = fd_derivative(lambda x: self.f(x, t).chart(), s)
        Y = fd_derivative(lambda y: self.f(s, y).chart(), t)
        return X, Y

    def checked_tangents(self, s, t):
        X, Y = self.tangents(s, t)
        sv = np.linalg.svd(np.column_stack([X, Y]), compute_uv=False)
        if not np.all(np.isfinite(sv)) or sv[0] == 0.0 or sv[1] <= RANK_TOL * sv[0]:
            raise ImmersionError(f"not an immersion at (s, t) = ({s:.6g}, {t:.6g})", (s, t))
        return X, Y


def pullback_values(forms, X, Y):
    """Scale-normalized |omega(X, Y)| for each antisymmetric 4x4 matrix."""
    jac2 = float(X @ X + Y @ Y)
    out = []
    for A in forms:
        nrm = np.linalg.norm(A)
        out.append(abs(float(X @ A @ Y)) / (nrm * jac2) if nrm > 0 else 0.0)
    return tuple(out)


class SurfaceClass(str, enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"
    NEITHER = "neither"


@dataclass(frozen=True)
class GridResiduals:
    """Per-sample maxima of the SD and ASD pullback residuals over a grid."""

    sd: np.ndarray
    asd: np.ndarray

    @property
    def max_sd(self):
        return float(self.sd.max())

    @property
    def max_asd(self):
        return float(self.asd.max())

    @property
    def min_sd(self):
        return float(self.sd.min())

    @property
    def min_asd(self):
        return float(self.asd.min())

    def verdict(self, tol=CLASS_TOL) -> SurfaceClass:
        if self.max_sd < tol and self.max_asd >= tol:
            return SurfaceClass.ALPHA
        if self.max_asd < tol and self.max_sd >= tol:
            return SurfaceClass.BETA
        return SurfaceClass.NEITHER


def grid_residuals(basis_fn, surface: SurfaceMap, grid) -> GridResiduals:
    """``basis_fn(chart_point) -> (sd_matrices, asd_matrices)``."""
    grid = list(grid)
    if not grid:
        raise ValueError("grid must be nonempty")
    sd, asd = [], []
    for s, t in grid:
        X, Y = surface.checked_tangents(s, t)
        sd_forms, asd_forms = basis_fn(surface.point(s, t))
        sd.append(max(pullback_values(sd_forms, X, Y)))
        asd.append(max(pullback_values(asd_forms, X, Y)))
    return GridResiduals(np.array(sd), np.array(asd))


def tensor_grid(s_values, t_values):
    return [(float(s), float(t)) for s in s_values for t in t_values]
