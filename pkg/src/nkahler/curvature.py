"""Finite-difference curvature of 4-dimensional metric fields.

Conventions
-----------
``dg[i, j, k] = d_k g_ij`` and ``ddg[i, j, k, l] = d_k d_l g_ij``.
Christoffel symbols ``gamma[a, b, c] = Gamma^a_bc``. The lowered Riemann tensor
follows ``R_abcd = g(R(e_c, e_d) e_b, e_a)`` so that the round sphere has
positive sectional curvature, ``Ric_bd = g^ac R_abcd`` and ``R = g^bd Ric_bd``.
The Weyl tensor acts on 2-forms by ``W(w)_ab = 1/2 C_ab^cd w_cd``; with this
normalization the diagonal blocks of the curvature operator in an SD/ASD
splitting are ``W^(+/-) + R/12``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateMetricError, DomainError
from .flat import ASD_BASIS, FLAT_METRIC, SD_BASIS
from .linalg import THETA, coeffs_to_matrix

FD_TOL = 1e-5
BASE_STEP = 1e-4
DET_TOL = 1e-12


@dataclass(frozen=True)
class MetricField:
    """A symmetric bilinear form field ``g(x)`` on a 4-dimensional chart.

    ``orientation`` is the sign of the volume form relative to
    ``dx^1 ^ dx^2 ^ dx^3 ^ dx^4``. ``dg``/``ddg`` are optional analytic
    derivatives; otherwise nested central differences are used.
    """

    g: Callable[[np.ndarray], np.ndarray]
    domain: Callable[[np.ndarray], bool] = lambda x: True
    orientation: int = 1
    name: str = "metric"
    dg: Optional[Callable] = None
    ddg: Optional[Callable] = None
    step: float = BASE_STEP
    richardson: bool = True

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if not self.domain(x):
            raise DomainError(f"{self.name}: point {x.tolist()} outside the chart domain")
        m = np.asarray(self.g(x), dtype=float)
        if np.abs(m - m.T).max() > 1e-12 * max(1.0, np.abs(m).max()):
            raise ValueError(f"{self.name}: metric matrix is not symmetric")
        return 0.5 * (m + m.T)

    def scaled(self, lam):
        """The constant conformal rescaling ``lam * g``."""
        return MetricField(
            lambda x: lam * self.g(x),
            self.domain,
            self.orientation,
            f"{lam:g}*{self.name}",
            None if self.dg is None else (lambda x: lam * self.dg(x)),
            None if self.ddg is None else (lambda x: lam * self.ddg(x)),
            self.step,
            self.richardson,
        )


def _steps(m: MetricField, x):
    return m.step * (1.0 + np.abs(x))


def _dg_central(m, x, h):
    out = np.zeros((4, 4, 4))
    for k in range(4):
        e = np.zeros(4)
        e[k] = h[k]
        out[:, :, k] = (m(x + e) - m(x - e)) / (2 * h[k])
    return out


def _ddg_nested(m, x, h):
    out = np.zeros((4, 4, 4, 4))
    for l in range(4):
        e = np.zeros(4)
        e[l] = h[l]
        out[:, :, :, l] = (_dg_central(m, x + e, h) - _dg_central(m, x - e, h)) / (2 * h[l])
    # nested stencils commute only up to rounding; symmetrize the derivative slots
    return 0.5 * (out + out.transpose(0, 1, 3, 2))


def metric_derivatives(m: MetricField, x, step=None, richardson=None):
    """Return ``(g, dg, ddg)`` at ``x``."""
    x = np.asarray(x, dtype=float)
    g = m(x)
    if m.dg is not None and m.ddg is not None:
        return g, np.asarray(m.dg(x), float), np.asarray(m.ddg(x), float)
    h = _steps(m, x) if step is None else np.full(4, float(step))
    rich = m.richardson if richardson is None else richardson
    dg = _dg_central(m, x, h)
    ddg = _ddg_nested(m, x, h)
    if rich:
        dg = (4 * _dg_central(m, x, h / 2) - dg) / 3
        ddg = (4 * _ddg_nested(m, x, h / 2) - ddg) / 3
    return g, dg, ddg


def _check_nondegenerate(g):
    d = np.linalg.det(g)
    if abs(d) <= DET_TOL:
        raise DegenerateMetricError(f"metric is degenerate (det = {d:.3e})")


def christoffel_from(g, dg):
    gi = np.linalg.inv(g)
    # Gamma_{d bc} = 1/2 (d_b g_dc + d_c g_db - d_d g_bc)
    low = 0.5 * (dg.transpose(0, 2, 1) + dg - dg.transpose(2, 0, 1))
    gam = np.einsum("ad,dbc->abc", gi, low)
    return 0.5 * (gam + gam.transpose(0, 2, 1))


def christoffel(m: MetricField, x):
    g, dg, _ = metric_derivatives(m, x)
    _check_nondegenerate(g)
    return christoffel_from(g, dg)


def riemann_from(g, dg, ddg):
    gam = christoffel_from(g, dg)
    R = 0.5 * (
        ddg.transpose(0, 2, 3, 1)  # d_b d_c g_ad -> [a, b, c, d] from ddg[a, d, b, c]
        + ddg.transpose(2, 0, 1, 3)  # ddg[b, c, a, d]
        - ddg.transpose(2, 0, 3, 1)  # ddg[b, d, a, c]
        - ddg.transpose(0, 2, 1, 3)  # ddg[a, c, b, d]
    )
    R = R + np.einsum("ef,ebc,fad->abcd", g, gam, gam) - np.einsum("ef,ebd,fac->abcd", g, gam, gam)
    return R, gam


def _weyl(g, R):
    gi = np.linalg.inv(g)
    ric = np.einsum("ac,abcd->bd", gi, R)
    ric = 0.5 * (ric + ric.T)
    S = float(np.einsum("bd,bd", gi, ric))

    def kn(h, k):
        # Kulkarni-Nomizu product (h o k)_abcd
        return (
            np.einsum("ac,bd->abcd", h, k)
            + np.einsum("bd,ac->abcd", h, k)
            - np.einsum("ad,bc->abcd", h, k)
            - np.einsum("bc,ad->abcd", h, k)
        )

    schouten = 0.5 * (ric - S / 6.0 * g)
    C = R - kn(g, schouten)
    return ric, S, C


def null_coframe(g, orientation=1, tol=1e-8):
    """Deterministic double-null coframe for ``g``, rows are the four covectors.

    Gram-Schmidt over the chart axes, then pairwise sums and differences,
    accepting a candidate once its orthogonal remainder is non-null. The result
    satisfies ``T1 (.) T4 - T2 (.) T3 = g`` and its orientation matches
    ``orientation``.
    """
    scale = np.abs(g).max()
    eye = np.eye(4)
    candidates = [eye[i] for i in range(4)]
    candidates += [eye[i] + s * eye[j] for i, j in itertools.combinations(range(4), 2) for s in (1.0, -1.0)]
    frame, signs = [], []
    for c in candidates:
        w = c.copy()
        for e, sg in zip(frame, signs):
            w = w - sg * (e @ g @ c) * e
        n = float(w @ g @ w)
        if abs(n) > tol * scale * float(w @ w):
            frame.append(w / np.sqrt(abs(n)))
            signs.append(1.0 if n > 0 else -1.0)
        if len(frame) == 4:
            break
    if len(frame) < 4:
        raise DegenerateMetricError("could not build a pseudo-orthonormal frame")
    if sorted(signs) != [-1.0, -1.0, 1.0, 1.0]:
        raise DegenerateMetricError(f"metric signature is not (2,2): {signs}")
    order = [i for i in range(4) if signs[i] > 0] + [i for i in range(4) if signs[i] < 0]
    E = np.column_stack([frame[i] for i in order])
    coframe = np.linalg.inv(E)  # rows: orthonormal covectors with g = diag(1,1,-1,-1)
    theta = THETA @ coframe
    if np.sign(np.linalg.det(theta)) != orientation:
        coframe[3] = -coframe[3]
        theta = THETA @ coframe
    return theta


def duality_bases(theta):
    """SD and ASD 2-form matrices built from a double-null coframe."""
    T = np.asarray(theta)

    def to_chart(c):
        return T.T @ coeffs_to_matrix(c) @ T

    return [to_chart(c) for c in SD_BASIS], [to_chart(c) for c in ASD_BASIS]


def weyl_operator(C, g):
    """Mixed-index Weyl tensor ``C_ab^cd``."""
    gi = np.linalg.inv(g)
    return np.einsum("abef,ec,fd->abcd", C, gi, gi)


def _op_matrix(Cmix, basis):
    """Matrix of ``w -> 1/2 C_ab^cd w_cd`` in the given 6 antisymmetric matrices."""
    B = np.array([b[np.triu_indices(4, 1)] for b in basis]).T  # 6x6 coordinate columns
    images = np.array([(0.5 * np.einsum("abcd,cd->ab", Cmix, b))[np.triu_indices(4, 1)] for b in basis]).T
    return np.linalg.solve(B, images)


@dataclass(frozen=True)
class CurvatureReport:
    point: np.ndarray
    metric: np.ndarray
    christoffel: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: float
    weyl: np.ndarray
    weyl_block: np.ndarray  # 6x6 in (SD, ASD) basis from the null coframe
    weyl_plus_norm: float
    weyl_minus_norm: float
    bianchi_residual: float
    pair_symmetry_residual: float
    riemann_norm: float
    scale: float = field(default=1.0)

    def mixed_weyl_component(self, vectors, covectors):
        """``C_ab^cd X^a Y^b alpha_c beta_d`` for complex vectors/covectors."""
        Cmix = weyl_operator(self.weyl, self.metric)
        X, Y = vectors
        a, b = covectors
        return complex(np.einsum("abcd,a,b,c,d->", Cmix, X, Y, a, b))

    def summary(self):
        return {
            "scalar": self.scalar,
            "weyl_plus_norm": self.weyl_plus_norm,
            "weyl_minus_norm": self.weyl_minus_norm,
            "bianchi_residual": self.bianchi_residual,
            "pair_symmetry_residual": self.pair_symmetry_residual,
        }


def report_from_derivatives(g, dg, ddg, orientation=1, point=None):
    _check_nondegenerate(g)
    R, gam = riemann_from(g, dg, ddg)
    ric, S, C = _weyl(g, R)
    # magnitude of the individual terms entering R, used to normalize residuals
    gi = np.linalg.inv(g)
    scale = np.abs(ddg).max() + np.abs(dg).max() ** 2 * np.abs(gi).max() + 1e-300
    bianchi = np.abs(R + R.transpose(0, 2, 3, 1) + R.transpose(0, 3, 1, 2)).max() / scale
    pair = np.abs(R - R.transpose(2, 3, 0, 1)).max() / scale
    theta = null_coframe(g, orientation)
    sd, asd = duality_bases(theta)
    block = _op_matrix(weyl_operator(C, g), sd + asd)
    return CurvatureReport(
        point=None if point is None else np.asarray(point, float),
        metric=g,
        christoffel=gam,
        riemann=R,
        ricci=ric,
        scalar=S,
        weyl=C,
        weyl_block=block,
        weyl_plus_norm=float(np.linalg.norm(block[:3, :3])),
        weyl_minus_norm=float(np.linalg.norm(block[3:, 3:])),
        bianchi_residual=float(bianchi),
        pair_symmetry_residual=float(pair),
        riemann_norm=float(np.linalg.norm(R)),
        scale=float(scale),
    )


def riemann_report(m: MetricField, x, step=None, richardson=None) -> CurvatureReport:
    g, dg, ddg = metric_derivatives(m, x, step=step, richardson=richardson)
    return report_from_derivatives(g, dg, ddg, m.orientation, x)


@dataclass(frozen=True)
class ASDCheck:
    max_weyl_plus: float
    max_weyl_minus: float
    reports: tuple


def check_asd(m: MetricField, points) -> ASDCheck:
    points = list(points)
    if not points:
        raise ValueError("sample set must be nonempty")
    reports = tuple(riemann_report(m, p) for p in points)
    return ASDCheck(
        max(r.weyl_plus_norm for r in reports),
        max(r.weyl_minus_norm for r in reports),
        reports,
    )


def flat_metric_field(orientation=-1):
    """R^{2,2} in its standard coordinates."""
    return MetricField(lambda x: FLAT_METRIC.copy(), orientation=orientation, name="flat")
