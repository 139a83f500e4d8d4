"""Spaces of oriented geodesics: L(E^3) = TS^2 and L(H^3) = P^1 x P^1 minus the anti-diagonal.

For L(H^3) the real chart is ``(Re mu1, Im mu1, Re mu2, Im mu2)`` and the
metric is ``-i[(1 + mu1 conj(mu2))^-2 dmu1 dmu2-bar - (1 + conj(mu1) mu2)^-2 dmu1-bar dmu2]``
with symmetrized products. Boundary endpoints in the ball model are
``e1 = sigma(mu1)`` and ``e2 = -sigma(mu2)`` for the stereographic map sigma.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .curvature import MetricField
from .errors import AntiDiagonalError, DegenerateCurveError, DomainError
from .linalg import CHART, Bilinear4, Covec4, Form2, sym_product, wedge_matrix
from .surfaces import GridResiduals, SurfaceMap, grid_residuals, tensor_grid

DIAG_TOL = 1e-10
POLE_LIMIT = 1e8
SIN_TOL = 1e-12

DMU1 = np.array([1.0, 1.0j, 0.0, 0.0])
DMU2 = np.array([0.0, 0.0, 1.0, 1.0j])


# -- L(E^3) and the map Phi -------------------------------------------------


@dataclass(frozen=True)
class E3Point:
    z: complex
    t: float

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "t", float(self.t))

    def as_array(self):
        return np.array([self.z.real, self.z.imag, self.t])


@dataclass(frozen=True)
class OrientedLineE3:
    xi: complex
    eta: complex

    def __post_init__(self):
        object.__setattr__(self, "xi", complex(self.xi))
        object.__setattr__(self, "eta", complex(self.eta))
        if not cmath.isfinite(self.xi):
            raise DomainError("direction xi must be finite in this chart")


def phi_map(line: OrientedLineE3, r: float) -> E3Point:
    xi, eta = line.xi, line.eta
    n = 1.0 + abs(xi) ** 2
    z = (2 * (eta - eta.conjugate() * xi**2) + 2 * xi * n * r) / n**2
    t = (-2 * (eta * xi.conjugate() + eta.conjugate() * xi).real + (1 - abs(xi) ** 4) * r) / n**2
    return E3Point(z, t)


def phi_inverse(xi: complex, p: E3Point):
    """Return (eta, r) with phi_map((xi, eta), r) = p."""
    xi = complex(xi)
    z, t = p.z, p.t
    eta = 0.5 * (z - 2 * t * xi - z.conjugate() * xi**2)
    r = ((xi.conjugate() * z).real * 2 + (1 - abs(xi) ** 2) * t) / (1 + abs(xi) ** 2)
    return eta, float(r)


def line_direction(xi: complex):
    """Unit direction of the oriented line, by inverse stereographic projection."""
    xi = complex(xi)
    n = 1.0 + abs(xi) ** 2
    return np.array([2 * xi.real, 2 * xi.imag, 1 - abs(xi) ** 2]) / n


def affine_fit_residual(points):
    """Largest distance of the points from their best-fit line."""
    P = np.asarray(points, dtype=float)
    c = P.mean(axis=0)
    _, _, vt = np.linalg.svd(P - c)
    d = vt[0]
    rel = (P - c) - np.outer((P - c) @ d, d)
    return float(np.linalg.norm(rel, axis=1).max())


@dataclass(frozen=True)
class LinesInPlane:
    C0: float
    points: np.ndarray  # (n, 3) sampled points (Re z, Im z, height_t)
    planarity_residual: float  # max |Im(z e^{-i C0})|
    display_residual: float  # max deviation from the closed-form display


def corollary_display(C0, s, surface_t, r):
    """z = 2[(1 - s^4) surface_t + s r] e^{i C0}/(1 + s^2), height_t = [-4s(1+s^2) surface_t + (1 - s^2) r]/(1+s^2)."""
    n = 1.0 + s * s
    z = 2 * ((1 - s**4) * surface_t + s * r) / n * cmath.exp(1j * C0)
    h = (-4 * s * n * surface_t + (1 - s * s) * r) / n
    return E3Point(z, h)


def lines_in_plane(C0, s_values, t_values, r_values) -> LinesInPlane:
    """Points of the lines xi = s e^{i C0}, eta = (1 + s^2)^2 surface_t e^{i C0}."""
    rot = cmath.exp(1j * C0)
    pts, plan, disp = [], 0.0, 0.0
    for s in s_values:
        for st in t_values:
            line = OrientedLineE3(s * rot, (1 + s * s) ** 2 * st * rot)
            for r in r_values:
                p = phi_map(line, r)
                q = corollary_display(C0, s, st, r)
                pts.append(p.as_array())
                plan = max(plan, abs((p.z * rot.conjugate()).imag))
                disp = max(disp, abs(p.z - q.z), abs(p.t - q.t))
    return LinesInPlane(float(C0), np.array(pts), float(plan), float(disp))


# -- L(H^3) -----------------------------------------------------------------


def _check_mu(mu):
    if not cmath.isfinite(mu) or abs(mu) > POLE_LIMIT:
        raise DomainError(f"|mu| = {abs(mu):.3e} beyond the chart limit {POLE_LIMIT:g}")


@dataclass(frozen=True)
class GeodesicH3:
    """Oriented geodesic of H^3 as (mu1, mu2) off the anti-diagonal mu1 conj(mu2) = -1."""

    mu1: complex
    mu2: complex

    def __post_init__(self):
        object.__setattr__(self, "mu1", complex(self.mu1))
        object.__setattr__(self, "mu2", complex(self.mu2))
        _check_mu(self.mu1)
        _check_mu(self.mu2)
        if abs(1 + self.mu1 * self.mu2.conjugate()) <= DIAG_TOL:
            raise AntiDiagonalError(f"(mu1, mu2) = ({self.mu1}, {self.mu2}) lies on the anti-diagonal")

    @property
    def p(self):
        return 1 + self.mu1 * self.mu2.conjugate()

    @property
    def q(self):
        return 1 + self.mu1.conjugate() * self.mu2

    def chart(self):
        return np.array([self.mu1.real, self.mu1.imag, self.mu2.real, self.mu2.imag])

    @classmethod
    def from_chart(cls, x):
        return cls(complex(x[0], x[1]), complex(x[2], x[3]))


@dataclass(frozen=True)
class TangentLH3:
    dmu1: complex
    dmu2: complex

    def __post_init__(self):
        object.__setattr__(self, "dmu1", complex(self.dmu1))
        object.__setattr__(self, "dmu2", complex(self.dmu2))
        if not (cmath.isfinite(self.dmu1) and cmath.isfinite(self.dmu2)):
            raise ValueError("tangent components must be finite")

    def chart(self):
        return np.array([self.dmu1.real, self.dmu1.imag, self.dmu2.real, self.dmu2.imag])


def metric_matrix_lh3(g: GeodesicH3):
    M = -1j * (sym_product(DMU1, DMU2.conj()) / g.p**2 - sym_product(DMU1.conj(), DMU2) / g.q**2)
    return M.real


def metric_LH3(g: GeodesicH3) -> Bilinear4:
    return Bilinear4.symmetrized(metric_matrix_lh3(g), CHART)


def symplectic_matrix_lh3(g: GeodesicH3):
    M = -(wedge_matrix(DMU1, DMU2.conj()) / g.p**2 + wedge_matrix(DMU1.conj(), DMU2) / g.q**2)
    return M.real


def theta_frame_matrix_lh3(g: GeodesicH3):
    X = DMU1 / g.p - DMU2 / g.q
    Y = DMU1 / g.p + DMU2 / g.q
    return np.array([X.real, Y.real, -X.imag, -Y.imag])


def theta_frame_LH3(g: GeodesicH3):
    return tuple(Covec4(row, CHART) for row in theta_frame_matrix_lh3(g))


def orientation_lh3(g: GeodesicH3):
    return int(np.sign(np.linalg.det(theta_frame_matrix_lh3(g))))


def _complex_bases_lh3(g):
    p, q = g.p, g.q
    aq = abs(q) ** 2
    m1, m1b, m2, m2b = DMU1, DMU1.conj(), DMU2, DMU2.conj()
    w = wedge_matrix
    # a1 + i c1 splits into the a1 and c1 elements
    sd = [
        (w(m1, m2) + w(m1b, m2b)) / aq,
        1j * (w(m1, m2) - w(m1b, m2b)) / aq,
        w(m1, m2b) / p**2 + w(m1b, m2) / q**2,
    ]
    # -i(a2 + c2) and -i(a2 - c2) split into dmu1^dmu1-bar and dmu2^dmu2-bar
    asd = [
        -1j * w(m1, m1b) / aq,
        -1j * w(m2, m2b) / aq,
        1j * (w(m1, m2b) / p**2 - w(m1b, m2) / q**2),
    ]
    return sd, asd


def duality_matrices_lh3(g: GeodesicH3):
    sd, asd = _complex_bases_lh3(g)
    return [A.real for A in sd], [A.real for A in asd]


def sd_basis_LH3(g):
    sd, _ = _complex_bases_lh3(g)
    return tuple(Form2.from_matrix(A, CHART) for A in sd)


def asd_basis_LH3(g):
    _, asd = _complex_bases_lh3(g)
    return tuple(Form2.from_matrix(A, CHART) for A in asd)


def lh3_metric_field() -> MetricField:
    def domain(x):
        try:
            GeodesicH3.from_chart(x)
        except DomainError:
            return False
        return True

    return MetricField(
        lambda x: metric_matrix_lh3(GeodesicH3.from_chart(x)),
        domain=domain,
        orientation=orientation_lh3(GeodesicH3(0j, 0j)),
        name="lh3",
    )


# -- beta-surfaces in L(H^3) ------------------------------------------------

TORUS_VARIANTS = ("beta", "printed")


@dataclass(frozen=True)
class BetaParamsH3:
    """``case='lh2'`` with C0, or ``case='torus'`` with C1 != 0.

    The torus ``variant`` selects mu2 = -sin v e^{iv}/C1 (``beta``, which
    satisfies the beta condition) or the displayed mu2 = sin v e^{iv}/C1
    (``printed``).
    """

    case: str
    C0: float = 0.0
    C1: float = 1.0
    variant: str = "beta"

    def __post_init__(self):
        if self.case not in ("lh2", "torus"):
            raise ValueError("case must be 'lh2' or 'torus'")
        if self.case == "torus" and self.C1 == 0:
            raise ValueError("torus requires C1 != 0")
        if self.variant not in TORUS_VARIANTS:
            raise ValueError(f"variant must be one of {TORUS_VARIANTS}")


def torus_mu1(C1, u, allow_pole=False):
    """C1 e^{iu}/sin u; with ``allow_pole`` the point u in pi Z maps to infinity."""
    s = math.sin(u)
    if abs(s) < SIN_TOL:
        if allow_pole:
            return complex(math.inf, 0.0)
        raise DomainError(f"sin u = 0 is excluded (u = {u:.6g})")
    return C1 * cmath.exp(1j * u) / s


def torus_mu2(C1, v, variant="beta"):
    sign = -1.0 if variant == "beta" else 1.0
    return sign * math.sin(v) * cmath.exp(1j * v) / C1


def _torus_point(params, u, v):
    mu1 = torus_mu1(params.C1, u)
    mu2 = torus_mu2(params.C1, v, params.variant)
    try:
        return GeodesicH3(mu1, mu2)
    except AntiDiagonalError as exc:
        raise AntiDiagonalError(f"torus meets the anti-diagonal at (u, v) = ({u:.6g}, {v:.6g})") from exc


def beta_surface_h3(params: BetaParamsH3) -> SurfaceMap:
    if params.case == "torus":
        C1 = params.C1
        sign = -1.0 if params.variant == "beta" else 1.0

        def f(u, v):
            return _torus_point(params, u, v)

        def jac(u, v):
            _torus_point(params, u, v)
            # d/du C1 e^{iu}/sin u = -C1/sin^2 u ; d/dv sin v e^{iv} = e^{2iv}
            return (
                TangentLH3(-C1 / math.sin(u) ** 2, 0.0),
                TangentLH3(0.0, sign * cmath.exp(2j * v) / C1),
            )

        return SurfaceMap(f, jac, name=f"torus-{params.variant}")

    rot = cmath.exp(-1j * params.C0)

    def f(l1, l2):
        if l1 <= 0 or l2 <= 0:
            raise DomainError(f"lh2 radial parameters must be positive, got ({l1}, {l2})")
        return GeodesicH3(l1 * rot, l2 * rot)

    def jac(l1, l2):
        f(l1, l2)
        return TangentLH3(rot, 0.0), TangentLH3(0.0, rot)

    return SurfaceMap(f, jac, name="lh2")


DEFAULT_TORUS_GRID = (np.linspace(0.2, 1.2, 50), np.linspace(1.6, 2.9, 50))
DEFAULT_LH2_GRID = (np.linspace(0.1, 2.0, 50), np.linspace(0.1, 2.0, 50))


def default_grid(params: BetaParamsH3, n=50):
    if params.case == "torus":
        return tensor_grid(np.linspace(0.2, 1.2, n), np.linspace(1.6, 2.9, n))
    return tensor_grid(np.linspace(0.1, 2.0, n), np.linspace(0.1, 2.0, n))


def surface_grid_residuals_h3(surface, grid) -> GridResiduals:
    return grid_residuals(duality_matrices_lh3, surface, grid)


def null_residual_lh3(surface, s, t):
    X, Y = surface.checked_tangents(s, t)
    G = metric_matrix_lh3(surface.point(s, t))
    return max(abs(X @ G @ X), abs(Y @ G @ Y), abs(X @ G @ Y)) / float(X @ X + Y @ Y)


# -- sphere at infinity -----------------------------------------------------


@dataclass(frozen=True)
class S2Point:
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"point not on the unit sphere (norm {n!r})")

    def as_array(self):
        return np.array([self.x, self.y, self.z])


def stereographic(mu) -> S2Point:
    """x = 2 Re mu/(1+|mu|^2), y = 2 Im mu/(1+|mu|^2), z = (1-|mu|^2)/(1+|mu|^2); infinity -> (0,0,-1)."""
    if mu is None or cmath.isinf(complex(mu)):
        return S2Point(0.0, 0.0, -1.0)
    mu = complex(mu)
    n = 1.0 + abs(mu) ** 2
    return S2Point(2 * mu.real / n, 2 * mu.imag / n, (1 - abs(mu) ** 2) / n)


def stereographic_array(mu):
    return stereographic(mu).as_array()


def endpoints(g: GeodesicH3):
    return stereographic_array(g.mu1), -stereographic_array(g.mu2)


@dataclass(frozen=True)
class Plane3:
    """The plane n . X = c."""

    normal: np.ndarray
    offset: float

    def residual(self, X):
        return float(np.asarray(self.normal) @ np.asarray(X) - self.offset)


@dataclass(frozen=True)
class Circle3:
    center: np.ndarray
    normal: np.ndarray
    radius: float

    @classmethod
    def from_sphere_plane(cls, plane: Plane3):
        n = np.asarray(plane.normal, float)
        nn = float(n @ n)
        d2 = plane.offset**2 / nn
        if d2 > 1.0:
            raise ValueError("plane misses the unit sphere")
        return cls(plane.offset * n / nn, n / math.sqrt(nn), math.sqrt(max(0.0, 1.0 - d2)))

    @classmethod
    def fit(cls, points):
        """Best-fit circle of points that lie on a plane section of the unit sphere."""
        P = np.asarray(points, float)
        c = P.mean(axis=0)
        _, _, vt = np.linalg.svd(P - c)
        n = vt[2]
        off = float(np.mean(P @ n))
        if off < 0:
            n, off = -n, -off
        return cls.from_sphere_plane(Plane3(n, off))

    def sample(self, n):
        a = np.cross(self.normal, [1.0, 0.0, 0.0])
        if np.linalg.norm(a) < 1e-6:
            a = np.cross(self.normal, [0.0, 1.0, 0.0])
        a /= np.linalg.norm(a)
        b = np.cross(self.normal, a)
        th = np.linspace(0.0, 2 * np.pi, n)
        return self.center + self.radius * (np.outer(np.cos(th), a) + np.outer(np.sin(th), b))


def circle_intersection_count(c1: Circle3, c2: Circle3, tol=1e-9):
    """Number of common points of two circles on the unit sphere (inf if they coincide)."""
    n1, n2 = c1.normal, c2.normal
    d1, d2 = float(n1 @ c1.center), float(n2 @ c2.center)
    cross = np.cross(n1, n2)
    if np.linalg.norm(cross) < tol:
        same = abs(d1 - d2 * float(n1 @ n2)) < tol
        return math.inf if same else 0
    # line of intersection of the two planes: point + s * cross
    A = np.array([n1, n2, cross])
    p0 = np.linalg.solve(A, [d1, d2, 0.0])
    dirn = cross / np.linalg.norm(cross)
    b = float(p0 @ dirn)
    disc = b * b - (float(p0 @ p0) - 1.0)
    if disc < -tol:
        return 0
    if abs(disc) <= tol:
        return 1
    return 2


@dataclass(frozen=True)
class TorusCircles:
    """The two plane sections y + C1(z - 1) = 0 (first curve) and y - C1(z + 1) = 0 (second)."""

    C1: float
    plane1: Plane3
    plane2: Plane3

    def incidence(self, mu1_samples, mu2_samples):
        r1 = max(abs(self.plane1.residual(stereographic_array(m))) for m in mu1_samples)
        r2 = max(abs(self.plane2.residual(stereographic_array(m))) for m in mu2_samples)
        return r1, r2

    def reflection_residual(self, mu1_samples):
        """Reflect first-curve points in z = 0 and test them against the second plane."""
        out = 0.0
        for m in mu1_samples:
            X = stereographic_array(m) * np.array([1.0, 1.0, -1.0])
            out = max(out, abs(self.plane2.residual(X)))
        return out


def torus_circles(C1) -> TorusCircles:
    if C1 == 0:
        raise ValueError("C1 must be nonzero")
    # y + C1 z = C1  and  y - C1 z = C1
    return TorusCircles(
        float(C1),
        Plane3(np.array([0.0, 1.0, float(C1)]), float(C1)),
        Plane3(np.array([0.0, 1.0, -float(C1)]), float(C1)),
    )


def torus_parameter_samples(n, margin=1e-3):
    """Parameters covering one period (0, pi) of each torus curve."""
    return np.linspace(margin, np.pi - margin, n)


def boundary_curves(params: BetaParamsH3, n=400):
    """Endpoint samples e1(u) and e2(v) of the torus family in the ball model."""
    us = torus_parameter_samples(n)
    e1 = np.array([stereographic_array(torus_mu1(params.C1, u)) for u in us])
    e2 = np.array([-stereographic_array(torus_mu2(params.C1, v, params.variant)) for v in us])
    return us, e1, e2


def boundary_circles(params: BetaParamsH3, n=400):
    _, e1, e2 = boundary_curves(params, n)
    return Circle3.fit(e1), Circle3.fit(e2)


def circle_fit_residual(circle: Circle3, points):
    P = np.asarray(points)
    normal_res = np.abs((P - circle.center) @ circle.normal)
    radial = np.abs(np.linalg.norm(P - circle.center, axis=1) - circle.radius)
    return float(max(normal_res.max(), radial.max()))


@dataclass(frozen=True)
class ContactReport:
    min_distance: float
    argmin: tuple
    second_minimum: float
    n_zero: int


def boundary_contact(params: BetaParamsH3, n=720, zero_tol=1e-6):
    """Closest approach between the two endpoint curves.

    d(u) = min_v |e1(u) - e2(v)| over a periodic grid that includes the pole
    u = 0 (mu1 = infinity); reports its global minimum, the second smallest
    local minimum of d (inf if there is only one) and the number of local
    minima below ``zero_tol``.
    """
    us = np.linspace(0.0, np.pi, n, endpoint=False)
    e1 = np.array([stereographic_array(torus_mu1(params.C1, u, allow_pole=True)) for u in us])
    e2 = np.array([-stereographic_array(torus_mu2(params.C1, v, params.variant)) for v in us])
    D = np.linalg.norm(e1[:, None, :] - e2[None, :, :], axis=2)
    d = D.min(axis=1)
    idx = [i for i in range(n) if d[i] <= d[i - 1] and d[i] <= d[(i + 1) % n]]
    vals = sorted(d[i] for i in idx)
    i0 = int(np.argmin(d))
    j0 = int(np.argmin(D[i0]))
    # with a single local minimum there is no second one
    second = vals[1] if len(vals) > 1 else math.inf
    return ContactReport(float(d[i0]), (float(us[i0]), float(us[j0])), float(second), int(sum(v <= zero_tol for v in vals)))


# -- ball model -------------------------------------------------------------


def ball_geodesic(g: GeodesicH3, n: int = 64):
    """Sample the hyperbolic geodesic from e1 to e2 in the Poincare ball."""
    if n < 2:
        raise ValueError("need at least two samples")
    e1, e2 = endpoints(g)
    c = float(np.clip(e1 @ e2, -1.0, 1.0))
    if np.linalg.norm(e1 - e2) < 1e-12:
        raise AntiDiagonalError("coincident endpoints")
    half = math.acos(c) / 2
    if math.cos(half) < 1e-7:
        s = np.linspace(0.0, 1.0, n)
        return np.outer(1 - s, e1) + np.outer(s, e2)
    a = (e1 + e2) / np.linalg.norm(e1 + e2)
    b = (e1 - e2) / np.linalg.norm(e1 - e2)
    center = a / math.cos(half)
    R = math.tan(half)
    psi0 = math.pi / 2 - half
    psi = np.linspace(psi0, -psi0, n)
    pts = center + R * (np.outer(-np.cos(psi), a) + np.outer(np.sin(psi), b))
    pts[0], pts[-1] = e1, e2
    return pts


def boundary_angle(polyline):
    """Angle between the arc tangent at its first point and the sphere normal there."""
    P = np.asarray(polyline)
    tangent = P[1] - P[0]
    if np.linalg.norm(tangent) == 0:
        raise DegenerateCurveError("repeated first sample")
    c = abs(float(tangent @ P[0])) / (np.linalg.norm(tangent) * np.linalg.norm(P[0]))
    return math.acos(min(1.0, c))


def arc_tangent_angle(g: GeodesicH3):
    """Exact angle between the arc tangent at e1 and the outward normal e1."""
    e1, e2 = endpoints(g)
    c = float(np.clip(e1 @ e2, -1.0, 1.0))
    half = math.acos(c) / 2
    if math.cos(half) < 1e-7:
        d = e2 - e1
    else:
        a = (e1 + e2) / np.linalg.norm(e1 + e2)
        b = (e1 - e2) / np.linalg.norm(e1 - e2)
        psi0 = math.pi / 2 - half
        # derivative of -cos(psi) a + sin(psi) b
        d = math.sin(psi0) * a + math.cos(psi0) * b
    cosang = abs(float(d @ e1)) / np.linalg.norm(d)
    return math.acos(min(1.0, cosang))


def family_geodesics(params: BetaParamsH3, n_geodesics=12, n_samples=48, grid=None):
    """Ball-model polylines for a deterministic subset of the surface's parameters."""
    S = beta_surface_h3(params)
    pts = grid if grid is not None else default_grid(params, int(math.ceil(math.sqrt(n_geodesics))))
    out = []
    for s, t in list(pts)[:n_geodesics]:
        g = S.point(s, t)
        out.append(((s, t), ball_geodesic(g, n_samples)))
    return out


def lh3_point_sampler(rng, radius=1.5, min_gap=0.2):
    """Random chart point with |1 + mu1 conj(mu2)| >= min_gap."""
    while True:
        x = rng.uniform(-radius, radius, 4)
        g = complex(x[0], x[1]), complex(x[2], x[3])
        if abs(1 + g[0] * g[1].conjugate()) >= min_gap:
            return GeodesicH3(*g)


def beta_condition_value(mu1, dmu1, mu2, dmu2):
    """Im(mu1' conj(mu2') / (1 + mu1 conj(mu2))^2); zero exactly for beta surfaces with mu1(u), mu2(v)."""
    p = 1 + mu1 * np.conj(mu2)
    return float((dmu1 * np.conj(dmu2) / p**2).imag)


