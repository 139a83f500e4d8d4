import cmath
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given, strategies as st

from conftest import finite, unit
import oracles
from nkahler import geodesics as gs, tn
from nkahler.errors import AntiDiagonalError, DomainError
from nkahler.linalg import hodge_matrix
from nkahler.surfaces import SurfaceClass, tensor_grid

cplx = st.tuples(finite, finite).map(lambda t: complex(*t))
small = st.tuples(unit, unit).map(lambda t: 1.5 * complex(*t))
J_CHART = np.kron(np.eye(2), np.array([[0.0, -1.0], [1.0, 0.0]]))
_LH3 = sp.lambdify(oracles.X, oracles.lh3_metric(), "numpy")


# -- Phi ---------------------------------------------------------------------


@given(cplx, cplx, finite)
def test_phi_roundtrip(xi, eta, r):
    p = gs.phi_map(gs.OrientedLineE3(xi, eta), r)
    e2, r2 = gs.phi_inverse(xi, p)
    scale = (1 + abs(xi) ** 2) ** 2 * (1 + abs(eta) + abs(r))
    assert abs(e2 - eta) <= 1e-13 * scale and abs(r2 - r) <= 1e-13 * scale


@given(cplx, cplx, finite)
def test_phi_is_unit_speed_along_direction(xi, eta, r):
    line = gs.OrientedLineE3(xi, eta)
    d = gs.line_direction(xi)
    p0, p = gs.phi_map(line, 0.0).as_array(), gs.phi_map(line, r).as_array()
    assert np.allclose(p - p0, r * d, atol=1e-11 * (1 + abs(r)))
    # r = 0 is the point of the line closest to the origin
    assert abs(p0 @ d) <= 1e-11 * (1 + np.linalg.norm(p0))


def test_phi_examples():
    assert gs.phi_map(gs.OrientedLineE3(0, 1), 0).as_array() == pytest.approx([2, 0, 0])
    eta, r = gs.phi_inverse(1, gs.E3Point(0, 1))
    assert eta == pytest.approx(-1) and r == pytest.approx(0)


@pytest.mark.parametrize("C0", [0.0, 0.7, 2.5])
def test_lines_in_plane(C0):
    v = np.linspace(-1.5, 1.5, 7)
    res = gs.lines_in_plane(C0, v, v, v)
    assert res.planarity_residual < 1e-12 and res.display_residual < 1e-12
    n = np.array([-math.sin(C0), math.cos(C0), 0.0])
    assert np.abs(res.points @ n).max() < 1e-12


# -- L(H^3) structures -------------------------------------------------------


def geodesic(mu1, mu2):
    assume(abs(1 + mu1 * mu2.conjugate()) > 0.1)
    return gs.GeodesicH3(mu1, mu2)


@given(small, small)
def test_metric_against_quadratic_form(mu1, mu2):
    g = geodesic(mu1, mu2)
    G = gs.metric_matrix_lh3(g)
    ref = np.array(_LH3(*g.chart()), dtype=float)
    assert np.allclose(G, ref, atol=1e-12 * np.abs(ref).max())
    assert np.sum(np.linalg.eigvalsh(G) > 0) == 2


@given(small, small)
def test_kaehler_frame_and_duality(mu1, mu2):
    g = geodesic(mu1, mu2)
    G, Om = gs.metric_matrix_lh3(g), gs.symplectic_matrix_lh3(g)
    s = np.abs(G).max()
    assert np.allclose(J_CHART.T @ G @ J_CHART, G, atol=1e-12 * s)
    assert np.allclose(Om, 2 * G @ J_CHART, atol=1e-12 * s)
    assert np.allclose(tn.frame_metric_matrix(gs.theta_frame_matrix_lh3(g)), G, atol=1e-12 * s)
    assert gs.orientation_lh3(g) == -1
    sd, asd = gs.duality_matrices_lh3(g)
    for A, sign in [(A, 1) for A in sd] + [(A, -1) for A in asd]:
        assert np.allclose(hodge_matrix(G, A, -1), sign * A, atol=1e-10 * np.abs(A).max())


def test_anti_diagonal_and_chart_limits():
    with pytest.raises(AntiDiagonalError):
        gs.GeodesicH3(1j, -1j)
    with pytest.raises(DomainError):
        gs.GeodesicH3(1e9, 0)
    with pytest.raises(DomainError):
        gs.torus_mu1(1.0, 0.0)
    assert cmath.isinf(gs.torus_mu1(1.0, math.pi, allow_pole=True))


# -- beta-surfaces -------------------------------------------------------------


@pytest.mark.parametrize("C1", [0.5, 1.0, 2.0, -1.0])
def test_torus_is_beta(C1):
    prm = gs.BetaParamsH3("torus", C1=C1)
    r = gs.surface_grid_residuals_h3(gs.beta_surface_h3(prm), gs.default_grid(prm, 10))
    assert r.max_asd < 1e-9 and r.min_sd > 1e-3
    assert r.verdict() is SurfaceClass.BETA


def test_displayed_torus_is_not_beta():
    prm = gs.BetaParamsH3("torus", C1=1.0, variant="printed")
    S = gs.beta_surface_h3(prm)
    r = gs.surface_grid_residuals_h3(S, gs.default_grid(prm, 10))
    assert r.verdict() is SurfaceClass.NEITHER
    # not even totally null
    assert gs.null_residual_lh3(S, 0.5, 2.0) > 1e-2


@given(st.floats(0.2, 2.5), st.floats(0.2, 2.5), st.floats(0.3, 3.0))
def test_beta_condition_along_torus(u, v, C1):
    assume(abs(math.sin(u)) > 0.1 and abs(math.sin(v)) > 0.1)
    mu1, mu2 = gs.torus_mu1(C1, u), gs.torus_mu2(C1, v)
    assume(abs(1 + mu1 * mu2.conjugate()) > 1e-3)
    dmu1 = -C1 / math.sin(u) ** 2
    dmu2 = -cmath.exp(2j * v) / C1
    assert abs(gs.beta_condition_value(mu1, dmu1, mu2, dmu2)) < 1e-9 * (1 + abs(dmu1 * dmu2) / abs(1 + mu1 * mu2.conjugate()) ** 2)


@pytest.mark.parametrize("C0", [0.0, 0.3, 2.0])
def test_lh2_is_beta(C0):
    prm = gs.BetaParamsH3("lh2", C0=C0)
    r = gs.surface_grid_residuals_h3(gs.beta_surface_h3(prm), gs.default_grid(prm, 8))
    assert r.verdict() is SurfaceClass.BETA


def test_torus_jacobian_matches_fd():
    S = gs.beta_surface_h3(gs.BetaParamsH3("torus", C1=0.7))
    X, Y = S.tangents(0.6, 2.1)
    Xf, Yf = S.fd_tangents(0.6, 2.1)
    assert np.allclose(X, Xf, atol=1e-9) and np.allclose(Y, Yf, atol=1e-9)


def test_grid_touching_pole_raises():
    S = gs.beta_surface_h3(gs.BetaParamsH3("torus", C1=1.0))
    with pytest.raises(DomainError):
        gs.surface_grid_residuals_h3(S, tensor_grid(np.linspace(0, 1, 4), np.linspace(1.6, 2.9, 4)))


def test_param_validation():
    with pytest.raises(ValueError):
        gs.BetaParamsH3("torus", C1=0.0)
    with pytest.raises(ValueError):
        gs.BetaParamsH3("cylinder")
    with pytest.raises(DomainError):
        gs.beta_surface_h3(gs.BetaParamsH3("lh2")).point(-1.0, 1.0)


# -- sphere at infinity ---------------------------------------------------------


@given(cplx)
def test_stereographic_on_sphere(mu):
    X = gs.stereographic_array(mu)
    assert abs(np.linalg.norm(X) - 1) < 1e-12
    # inverse projection from the south pole
    if X[2] > -1 + 1e-6:
        assert complex(X[0], X[1]) / (1 + X[2]) == pytest.approx(mu, abs=1e-9 * (1 + abs(mu) ** 2))


def test_circle_from_plane_and_count():
    c1 = gs.Circle3.from_sphere_plane(gs.Plane3(np.array([0.0, 0.0, 1.0]), 0.0))
    c2 = gs.Circle3.from_sphere_plane(gs.Plane3(np.array([1.0, 0.0, 0.0]), 0.0))
    assert c1.radius == pytest.approx(1.0)
    assert gs.circle_intersection_count(c1, c2) == 2
    c3 = gs.Circle3.from_sphere_plane(gs.Plane3(np.array([0.0, 0.0, 1.0]), 0.5))
    assert gs.circle_intersection_count(c1, c3) == 0
    # tangent circles y + z = 1 and y - z = 1 meet at (0, 1, 0)
    t1 = gs.Circle3.from_sphere_plane(gs.Plane3(np.array([0.0, 1.0, 1.0]), 1.0))
    t2 = gs.Circle3.from_sphere_plane(gs.Plane3(np.array([0.0, 1.0, -1.0]), 1.0))
    assert gs.circle_intersection_count(t1, t2) == 1
    assert gs.circle_intersection_count(t1, t1) == math.inf
    assert gs.circle_fit_residual(gs.Circle3.fit(t1.sample(50)), t1.sample(50)) < 1e-12


def test_torus_boundary_curves():
    prm = gs.BetaParamsH3("torus", C1=1.0)
    c1, c2 = gs.boundary_circles(prm)
    _, e1, e2 = gs.boundary_curves(prm)
    assert gs.circle_fit_residual(c1, e1) < 1e-12 and gs.circle_fit_residual(c2, e2) < 1e-12
    assert c1.radius == pytest.approx(1 / math.sqrt(2)) == c2.radius
    # both endpoint curves lie on one circle: they coincide rather than touch
    assert gs.circle_intersection_count(c1, c2) == math.inf


def test_displayed_torus_circles_touch_once():
    prm = gs.BetaParamsH3("torus", C1=1.0, variant="printed")
    c1, c2 = gs.boundary_circles(prm)
    assert gs.circle_intersection_count(c1, c2) == 1
    contact = gs.boundary_contact(prm)
    assert contact.n_zero == 1 and contact.min_distance < 1e-9
    assert np.allclose(gs.stereographic_array(gs.torus_mu1(1.0, contact.argmin[0], allow_pole=True)), [0, 0, -1])


# -- ball model --------------------------------------------------------------------


@given(small, small)
def test_ball_geodesic_is_orthogonal_circle(mu1, mu2):
    g = geodesic(mu1, mu2)
    e1, e2 = gs.endpoints(g)
    assume(np.linalg.norm(e1 - e2) > 1e-3 and np.linalg.norm(e1 + e2) > 1e-3)
    P = gs.ball_geodesic(g, 40)
    assert np.allclose(P[0], e1) and np.allclose(P[-1], e2)
    assert np.all(np.linalg.norm(P, axis=1) <= 1 + 1e-12)
    # the points lie on a circle in a plane through the origin meeting the sphere at right angles
    n = np.cross(e1, e2)
    assert np.abs(P @ n).max() < 1e-10 * np.linalg.norm(n) + 1e-12
    mid = (e1 + e2) / 2
    center = mid / (mid @ mid)  # pole of the chord
    R = np.linalg.norm(center - e1)
    assert np.allclose(np.linalg.norm(P - center, axis=1), R, atol=1e-10)
    assert center @ center == pytest.approx(1 + R * R)
    assert gs.arc_tangent_angle(g) == pytest.approx(0.0, abs=1e-7)


def test_diameter():
    P = gs.ball_geodesic(gs.GeodesicH3(0, 0), 5)
    assert np.allclose(P[0], [0, 0, 1]) and np.allclose(P[-1], [0, 0, -1])
    assert np.allclose(P[:, :2], 0)
    assert gs.boundary_angle(P) == pytest.approx(0.0, abs=1e-12)
