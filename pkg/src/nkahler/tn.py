"""Neutral Kaehler structure on the tangent bundle TN of a conformal surface.

The base carries ``e^{2u} |d xi|^2``; a point of TN is ``(xi, eta)`` with
``eta d/dxi + conj(eta) d/dconj(xi)`` the tangent vector. The real chart is
``x = (Re xi, Im xi, Re eta, Im eta)``; complex covectors are stored as
complex 4-arrays over ``dx^1..dx^4`` (``d xi = [1, i, 0, 0]``), and products of
covectors are the symmetrized ones.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import astuple, dataclass, field
from typing import Callable, Optional

import numpy as np

from .curvature import MetricField
from .errors import DegenerateCurveError, DomainError
from .flat import FLAT_METRIC, OMEGA, sd_asd_decompose
from .linalg import CHART, COORDINATE, THETA, Bilinear4, Covec4, Form2, sym_product, wedge_matrix
from .surfaces import CLASS_TOL, GridResiduals, SurfaceMap, grid_residuals

DXI = np.array([1.0, 1.0j, 0.0, 0.0])
DETA = np.array([0.0, 0.0, 1.0, 1.0j])
# complex vectors d/dxi and d/deta (dual to DXI, DETA)
VXI = np.array([0.5, -0.5j, 0.0, 0.0])
VETA = np.array([0.0, 0.0, 0.5, -0.5j])

HYPERBOLIC_MARGIN = 1e-8
DU_CHECK_TOL = 1e-7

# Real chart coordinates of TR^2 in terms of the flat coordinates x^1..x^4,
# from xi = (x1 + x3 + i(x2 + x4))/2 and eta = (x2 - x4 + i(x3 - x1))/2.
NOTE_L = 0.5 * np.array(
    [
        [1.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 1.0],
        [0.0, 1.0, 0.0, -1.0],
        [-1.0, 0.0, 1.0, 0.0],
    ]
)


def _fd_complex_derivative(fun, xi, h=None):
    """d/dxi of a real function of xi by fourth-order central differences."""
    if h is None:
        h = 1e-5 * (1.0 + abs(xi))

    def d(step):
        return (-fun(xi + 2 * step) + 8 * fun(xi + step) - 8 * fun(xi - step) + fun(xi - 2 * step)) / (12 * h)

    return 0.5 * (d(h) - 1j * d(1j * h))


def _fd_laplacian(fun, xi, h=1e-3):
    def d2(step):
        return (
            -fun(xi + 2 * step) + 16 * fun(xi + step) - 30 * fun(xi) + 16 * fun(xi - step) - fun(xi - 2 * step)
        ) / (12 * h * h)

    return d2(h) + d2(1j * h)


@dataclass(frozen=True)
class ConformalGeometry:
    """A conformal metric ``e^{2u}|d xi|^2`` on a planar chart."""

    name: str
    u: Callable[[complex], float]
    du: Callable[[complex], complex]
    kappa: Callable[[complex], float]
    domain: Callable[[complex], bool] = lambda xi: True
    dkappa: Optional[Callable[[complex], complex]] = None
    check_points: tuple = field(default=(0.0, 0.3 + 0.2j, -0.4 + 0.1j, 0.05 - 0.6j))

    def __post_init__(self):
        for xi in self.check_points:
            xi = complex(xi)
            if not self.domain(xi):
                continue
            fd = _fd_complex_derivative(self.u, xi)
            if abs(fd - complex(self.du(xi))) > DU_CHECK_TOL * (1.0 + abs(fd)):
                raise ValueError(f"{self.name}: supplied du disagrees with finite differences at xi={xi}")

    def check(self, xi):
        if not self.domain(complex(xi)):
            raise DomainError(f"{self.name}: xi = {complex(xi)} outside the domain")

    def conformal_factor(self, xi):
        return math.exp(2.0 * self.u(complex(xi)))

    def grad_u(self, xi):
        """Real gradient (u_x, u_y) from du = (u_x - i u_y)/2."""
        d = complex(self.du(complex(xi)))
        return np.array([2.0 * d.real, -2.0 * d.imag])

    def dkappa_xi(self, xi):
        xi = complex(xi)
        if self.dkappa is not None:
            return complex(self.dkappa(xi))
        return _fd_complex_derivative(self.kappa, xi, h=1e-3 * (1.0 + abs(xi)))

    # -- factories ---------------------------------------------------------

    @classmethod
    def flat(cls):
        return cls("flat", lambda xi: 0.0, lambda xi: 0j, lambda xi: 0.0, dkappa=lambda xi: 0j)

    @classmethod
    def sphere(cls):
        return cls(
            "sphere",
            lambda xi: math.log(2.0) - math.log1p(abs(xi) ** 2),
            lambda xi: -xi.conjugate() / (1.0 + abs(xi) ** 2),
            lambda xi: 1.0,
            dkappa=lambda xi: 0j,
        )

    @classmethod
    def hyperbolic(cls):
        return cls(
            "hyperbolic",
            lambda xi: math.log(2.0) - math.log(1.0 - abs(xi) ** 2),
            lambda xi: xi.conjugate() / (1.0 - abs(xi) ** 2),
            lambda xi: -1.0,
            domain=lambda xi: abs(xi) < 1.0 - HYPERBOLIC_MARGIN,
            dkappa=lambda xi: 0j,
        )

    @classmethod
    def custom(cls, u, du=None, kappa=None, dkappa=None, domain=None, name="custom"):
        """Arbitrary conformal factor; missing derivatives fall back to finite differences."""
        if du is None:
            du = lambda xi: _fd_complex_derivative(u, xi)  # noqa: E731
        if kappa is None:
            kappa = lambda xi: -math.exp(-2.0 * u(xi)) * _fd_laplacian(u, xi).real  # noqa: E731
        return cls(name, u, du, kappa, domain or (lambda xi: True), dkappa)

    @classmethod
    def by_name(cls, name):
        try:
            return {"flat": cls.flat, "sphere": cls.sphere, "hyperbolic": cls.hyperbolic}[name]()
        except KeyError:
            raise ValueError(f"unknown geometry {name!r}") from None


def sample_custom_geometry():
    """A non-constant curvature example: u = 0.15|xi|^2 + 0.1 Re(xi)."""
    return ConformalGeometry(
        "custom",
        lambda xi: 0.15 * abs(xi) ** 2 + 0.1 * xi.real,
        lambda xi: 0.15 * xi.conjugate() + 0.05,
        # Laplacian of u is 0.6, so kappa = -0.6 e^{-2u}
        lambda xi: -0.6 * math.exp(-2.0 * (0.15 * abs(xi) ** 2 + 0.1 * xi.real)),
        dkappa=lambda xi: 1.2
        * math.exp(-2.0 * (0.15 * abs(xi) ** 2 + 0.1 * xi.real))
        * (0.15 * xi.conjugate() + 0.05),
    )


@dataclass(frozen=True)
class PointTN:
    xi: complex
    eta: complex

    def __post_init__(self):
        object.__setattr__(self, "xi", complex(self.xi))
        object.__setattr__(self, "eta", complex(self.eta))

    def chart(self):
        return np.array([self.xi.real, self.xi.imag, self.eta.real, self.eta.imag])

    @classmethod
    def from_chart(cls, x):
        return cls(complex(x[0], x[1]), complex(x[2], x[3]))


@dataclass(frozen=True)
class TangentTN:
    """Real tangent vector given by its (d xi, d eta) components."""

    dxi: complex
    deta: complex

    def __post_init__(self):
        object.__setattr__(self, "dxi", complex(self.dxi))
        object.__setattr__(self, "deta", complex(self.deta))
        if not all(math.isfinite(c) for c in (self.dxi.real, self.dxi.imag, self.deta.real, self.deta.imag)):
            raise ValueError("tangent components must be finite")

    def chart(self):
        return np.array([self.dxi.real, self.dxi.imag, self.deta.real, self.deta.imag])


@dataclass(frozen=True)
class BetaParamsTN:
    C0: float = 0.0
    xi0: complex = 0j
    eta0: complex = 0j


def _parts(geom, p):
    geom.check(p.xi)
    e2u = geom.conformal_factor(p.xi)
    c = p.eta * complex(geom.du(p.xi))
    return e2u, c


def metric_matrix(geom, p):
    e2u, c = _parts(geom, p)
    M = 2 * e2u * (sym_product(DETA.conj(), DXI) - 2 * c * sym_product(DXI, DXI.conj()))
    return M.imag


def metric_G(geom: ConformalGeometry, p: PointTN) -> Bilinear4:
    return Bilinear4.symmetrized(metric_matrix(geom, p), CHART)


def metric_value(geom, p, v: TangentTN, w: TangentTN) -> float:
    return float(v.chart() @ metric_matrix(geom, p) @ w.chart())


def symplectic_matrix(geom, p):
    e2u, c = _parts(geom, p)
    M = 2 * e2u * (wedge_matrix(DETA, DXI.conj()) + 2 * c * wedge_matrix(DXI, DXI.conj()))
    return M.real


def symplectic_Omega(geom: ConformalGeometry, p: PointTN) -> Form2:
    return Form2.from_matrix(symplectic_matrix(geom, p), CHART)


def _b_covector(geom, p):
    e2u, c = _parts(geom, p)
    return e2u, DETA + 2 * c * DXI


def theta_frame_matrix(geom, p, variant="printed"):
    """Rows Theta^1..Theta^4 in chart components.

    ``printed``: Theta^1 = 2 Re dxi, Theta^2 = 2 e^{2u} Re B, Theta^3 = 2 Im dxi,
    Theta^4 = 2 e^{2u} Im B with B = d eta + 2 eta u_xi d xi. For these rows
    Theta^1 (.) Theta^4 - Theta^2 (.) Theta^3 = -2 G.
    ``rescaled``: the printed rows with Theta^1, Theta^2 divided by sqrt 2 and
    Theta^3, Theta^4 by -sqrt 2, which reproduces G with the same orientation.
    """
    e2u, B = _b_covector(geom, p)
    T = np.array([2 * DXI.real, 2 * e2u * B.real, 2 * DXI.imag, 2 * e2u * B.imag])
    if variant == "printed":
        return T
    if variant == "rescaled":
        return T * np.array([1.0, 1.0, -1.0, -1.0])[:, None] / math.sqrt(2.0)
    raise ValueError(f"unknown frame variant {variant!r}")


def theta_frame_tn(geom, p, variant="printed"):
    return tuple(Covec4(row, CHART) for row in theta_frame_matrix(geom, p, variant))


def frame_metric_matrix(theta):
    T = np.asarray(theta)
    return sym_product(T[0], T[3]) - sym_product(T[1], T[2])


def orientation_tn(geom, p):
    """Sign of the Theta volume form relative to dx^1 ^ .. ^ dx^4 (constant: -1)."""
    return int(np.sign(np.linalg.det(theta_frame_matrix(geom, p))))


def _complex_bases(geom, p):
    _, c = _parts(geom, p)
    cb = c.conjugate()
    d, db, n, nb = DXI, DXI.conj(), DETA, DETA.conj()
    w = wedge_matrix
    sd = [
        w(d, n) + w(db, nb),
        w(d, nb) + w(db, n) + 2 * (cb - c) * w(d, db),
        1j * (w(d, n) - w(db, nb)),
    ]
    B = n + 2 * c * d
    asd = [
        1j * w(d, db),
        1j * (w(d, nb) - w(db, n) + 2 * (cb + c) * w(d, db)),
        # i B ^ conj(B); expands to i(d eta ^ d eta-bar + 2 eta u_xi dxi ^ d eta-bar
        # + 2 eta-bar u_xi-bar d eta ^ dxi-bar + 4|eta u_xi|^2 dxi ^ dxi-bar)
        1j * w(B, B.conj()),
    ]
    return sd, asd


def printed_c2_element(geom, p):
    """The c_2 element exactly as displayed, as a complex matrix.

    Its third term is ``d xi-bar ^ d eta`` where a real form needs
    ``d eta ^ d xi-bar``; the imaginary part is therefore nonzero.
    """
    _, c = _parts(geom, p)
    cb = c.conjugate()
    d, db, n, nb = DXI, DXI.conj(), DETA, DETA.conj()
    w = wedge_matrix
    return 1j * (w(n, nb) + 2 * c * w(d, nb) + 2 * cb * w(db, n) + 4 * c * cb * w(d, db))


def sd_basis_tn(geom, p):
    sd, _ = _complex_bases(geom, p)
    return tuple(Form2.from_matrix(A, CHART) for A in sd)


def asd_basis_tn(geom, p):
    _, asd = _complex_bases(geom, p)
    return tuple(Form2.from_matrix(A, CHART) for A in asd)


def duality_matrices(geom, p):
    """Real antisymmetric matrices of the SD and ASD bases at p."""
    sd, asd = _complex_bases(geom, p)
    return [A.real for A in sd], [A.real for A in asd]


# -- surfaces ---------------------------------------------------------------


def pullback_residuals(geom, surface: SurfaceMap, st, which="ASD"):
    """Three scale-normalized values |omega_i(f_s, f_t)| for the SD or ASD basis."""
    from .surfaces import pullback_values

    s, t = st
    X, Y = surface.checked_tangents(s, t)
    sd, asd = duality_matrices(geom, surface.point(s, t))
    if which.upper() == "SD":
        return pullback_values(sd, X, Y)
    if which.upper() == "ASD":
        return pullback_values(asd, X, Y)
    raise ValueError("which must be 'SD' or 'ASD'")


def surface_grid_residuals(geom, surface, grid) -> GridResiduals:
    return grid_residuals(lambda pt: duality_matrices(geom, pt), surface, grid)


def classify_surface(geom, surface, grid, class_tol=CLASS_TOL):
    return surface_grid_residuals(geom, surface, grid).verdict(class_tol)


def beta_surface_tn(geom: ConformalGeometry, params: BetaParamsTN) -> SurfaceMap:
    """xi = s e^{i C0} + xi0, eta = (t e^{i C0} + eta0) e^{-2u}."""
    rot = cmath.exp(1j * params.C0)
    xi0, eta0 = complex(params.xi0), complex(params.eta0)

    def f(s, t):
        xi = s * rot + xi0
        geom.check(xi)
        return PointTN(xi, (t * rot + eta0) / geom.conformal_factor(xi))

    def jac(s, t):
        xi = s * rot + xi0
        geom.check(xi)
        em2u = 1.0 / geom.conformal_factor(xi)
        # d u / ds = u_xi xi_s + conj(u_xi xi_s)
        us = 2.0 * (complex(geom.du(xi)) * rot).real
        psi = t * rot + eta0
        return TangentTN(rot, -2.0 * us * psi * em2u), TangentTN(0.0, rot * em2u)

    return SurfaceMap(f, jac, name=f"beta-tn-{geom.name}")


def fibre_surface(geom, xi0) -> SurfaceMap:
    """The fibre over xi0, eta = s + i t."""
    xi0 = complex(xi0)
    geom.check(xi0)
    return SurfaceMap(
        lambda s, t: PointTN(xi0, complex(s, t)),
        lambda s, t: (TangentTN(0.0, 1.0), TangentTN(0.0, 1.0j)),
        name="fibre",
    )


def graph_surface(geom, fn=lambda xi: xi) -> SurfaceMap:
    """The graph eta = fn(xi) over the xi-plane, xi = s + i t (FD Jacobian)."""

    def f(s, t):
        xi = complex(s, t)
        geom.check(xi)
        return PointTN(xi, fn(xi))

    return SurfaceMap(f, None, name="graph")


# -- base curves ------------------------------------------------------------


def _christoffel_action(grad, v, w):
    """Gamma(v, w) for e^{2u}|dx|^2: Gamma^k_ij = d_i^k u_j + d_j^k u_i - d_ij u_k."""
    return v * (grad @ w) + w * (grad @ v) - (v @ w) * grad


def _rot90(v):
    return np.array([-v[1], v[0]])


def _curve_arrays(curve, s, dcurve=None, ddcurve=None, h=1e-3):
    z = complex(curve(s))
    if dcurve is not None:
        dz = complex(dcurve(s))
    else:
        dz = (-curve(s + 2 * h) + 8 * curve(s + h) - 8 * curve(s - h) + curve(s - 2 * h)) / (12 * h)
    if ddcurve is not None:
        ddz = complex(ddcurve(s))
    else:
        ddz = (
            -curve(s + 2 * h) + 16 * curve(s + h) - 30 * curve(s) + 16 * curve(s - h) - curve(s - 2 * h)
        ) / (12 * h * h)
    return z, np.array([dz.real, dz.imag]), np.array([ddz.real, ddz.imag])


def unit_frame_curvature(geom, curve, s, dcurve=None, ddcurve=None):
    """g(N, D_T T) for the unit tangent T and the unit normal N = J T."""
    xi, v, a = _curve_arrays(curve, s, dcurve, ddcurve)
    geom.check(xi)
    speed = float(np.hypot(*v))
    if speed < 1e-12:
        raise DegenerateCurveError(f"curve speed vanishes at s = {s}")
    D = a + _christoffel_action(geom.grad_u(xi), v, v)
    return math.exp(-geom.u(xi)) * float(_rot90(v) @ D) / speed**3


def frame_curvature_fd(geom, curve, s, frame_scale=1.0, h=1e-4):
    """N_k T^j (d_j T^k + Gamma^k_jl T^l) with T, N = frame_scale x (unit fields).

    The derivative of T along the curve is taken by central differences of the
    frame field, independent of the closed form used by unit_frame_curvature.
    """

    def tangent_field(x):
        xi, v, _ = _curve_arrays(curve, x)
        return xi, v, frame_scale * v / (math.exp(geom.u(xi)) * float(np.hypot(*v)))

    xi, v, T = tangent_field(s)
    geom.check(xi)
    if float(np.hypot(*v)) < 1e-12:
        raise DegenerateCurveError(f"curve speed vanishes at s = {s}")
    Tp = tangent_field(s + h)[2]
    Tm = tangent_field(s - h)[2]
    dT_ds = (Tp - Tm) / (2 * h)
    lam = float(np.hypot(*T) / np.hypot(*v))  # T = lam * dxi/ds
    cov = lam * (dT_ds + _christoffel_action(geom.grad_u(xi), v, T))
    N = _rot90(T)
    return geom.conformal_factor(xi) * float(N @ cov)


PAPER_FRAME_SCALE = 1.0 / math.sqrt(2.0)


def geodesic_curvature(geom, curve, convention="unit_frame", dcurve=None, ddcurve=None):
    """Return s -> geodesic curvature of the base curve s -> xi(s).

    ``unit_frame`` uses unit T, N; ``paper_frame`` uses the frames
    (1 + |xi|^2)/(2 sqrt 2) (d_xi + d_xibar) and i(...)(d_xi - d_xibar), which
    have squared length 1/2 for the sphere metric.
    """
    if convention == "unit_frame":
        return lambda s: unit_frame_curvature(geom, curve, s, dcurve, ddcurve)
    if convention == "paper_frame":
        return lambda s: frame_curvature_fd(geom, curve, s, PAPER_FRAME_SCALE)
    raise ValueError("convention must be 'unit_frame' or 'paper_frame'")


# -- curvature --------------------------------------------------------------


def weyl_component(geom, p: PointTN) -> complex:
    """i (eta d_xi kappa - conj(eta) d_xibar kappa)."""
    geom.check(p.xi)
    k = geom.dkappa_xi(p.xi)
    return complex(1j * (p.eta * k - (p.eta * k).conjugate()))


def metric_field(geom: ConformalGeometry) -> MetricField:
    return MetricField(
        lambda x: metric_matrix(geom, PointTN.from_chart(x)),
        domain=lambda x: geom.domain(complex(x[0], x[1])),
        orientation=orientation_tn(geom, PointTN(next(iter(_domain_seed(geom))), 0j)),
        name=f"tn-{geom.name}",
    )


def _domain_seed(geom):
    for xi in (0j, 0.1 + 0.1j, 0.5j, 2.0):
        if geom.domain(xi):
            yield xi


def note_pullback(M):
    """Pull a chart bilinear/2-form matrix back to x^1..x^4 via the identification."""
    return NOTE_L.T @ np.asarray(M) @ NOTE_L


def fit_constant(A, B):
    """Least-squares c with A ~ c B, and the relative residual."""
    A = np.asarray(A, float).ravel()
    B = np.asarray(B, float).ravel()
    c = float(A @ B / (B @ B))
    return c, float(np.linalg.norm(A - c * B) / max(np.linalg.norm(A), 1e-300))


def flat_reduction_report(xi=0.3 - 0.7j, eta=-0.2 + 0.4j):
    """Compare the u = 0 structures with R^{2,2} through the identification.

    Reports the best-fit constant c in ``TN object = c * flat object`` for the
    metric, the symplectic form and each frame covector, the raw residuals,
    and the ASD (resp. SD) content of the pulled-back SD (resp. ASD) bases.
    """
    geom = ConformalGeometry.flat()
    p = PointTN(xi, eta)
    G = note_pullback(metric_matrix(geom, p))
    Om = note_pullback(symplectic_matrix(geom, p))
    theta = theta_frame_matrix(geom, p) @ NOTE_L
    g_c, g_res = fit_constant(G, FLAT_METRIC)
    o_c, o_res = fit_constant(Om, OMEGA.matrix)
    frame = [fit_constant(theta[i], THETA[i]) for i in range(4)]
    sd, asd = duality_matrices(geom, p)
    span_res = 0.0
    for A, keep_sd in [(A, True) for A in sd] + [(A, False) for A in asd]:
        plus, minus = sd_asd_decompose(Form2.from_matrix(note_pullback(A), COORDINATE))
        wrong = minus if keep_sd else plus
        span_res = max(span_res, float(np.abs(astuple(wrong)).max() / np.linalg.norm(A)))
    return {
        "metric_scale": g_c,
        "metric_scale_residual": g_res,
        "metric_residual": float(np.abs(G - FLAT_METRIC).max()),
        "omega_scale": o_c,
        "omega_scale_residual": o_res,
        "omega_residual": float(np.abs(Om - OMEGA.matrix).max()),
        "frame_scales": [c for c, _ in frame],
        "frame_scale_residuals": [r for _, r in frame],
        "frame_residual": float(np.abs(theta - THETA).max()),
        "duality_span_residual": span_res,
    }
