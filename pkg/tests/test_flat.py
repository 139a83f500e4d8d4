import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from conftest import angle, coeffs6, vec4
from nkahler import flat
from nkahler.flat import DualityClass, NullPlaneParam
from nkahler.linalg import COORDINATE, DOUBLE_NULL, PAIRS, Covec4, Form2, Plane22, Vec4, basis_covector, wedge


def theta(a, b):
    return wedge(basis_covector(a - 1, DOUBLE_NULL), basis_covector(b - 1, DOUBLE_NULL))


@pytest.mark.parametrize(
    "src,dst,sign",
    [((1, 4), (2, 3), -1), ((2, 4), (2, 4), -1), ((1, 3), (1, 3), -1), ((3, 4), (3, 4), 1), ((1, 2), (1, 2), 1), ((2, 3), (1, 4), -1)],
)
def test_hodge_table(src, dst, sign):
    assert np.array_equal(flat.hodge_star(theta(*src)).coeffs, (sign * theta(*dst)).coeffs)


def test_hodge_in_coordinates():
    # orientation of dx1234 is negative, so *(dx1^dx2) = -(metric signs) dx3^dx4
    dx = [basis_covector(i) for i in range(4)]
    assert np.allclose(flat.hodge_star(wedge(dx[0], dx[1])).coeffs, -wedge(dx[2], dx[3]).coeffs)
    assert flat.ORIENTATION == -1


@given(coeffs6, st.sampled_from([COORDINATE, DOUBLE_NULL]))
def test_star_involution_and_table_matches_metric(c, basis):
    w = Form2(c, basis)
    assert np.allclose(flat.hodge_star(flat.hodge_star(w)).coeffs, w.coeffs, atol=1e-12 * w.norm())
    assert np.allclose(flat.hodge_star(w).coeffs, flat.hodge_star_numeric(w).coeffs, atol=1e-12 * w.norm())


@given(coeffs6)
def test_decomposition(c):
    w = Form2(c, DOUBLE_NULL)
    sd, asd = flat.sd_asd_decompose(w)
    wp, wm = flat.recompose(sd=sd), flat.recompose(asd=asd)
    assert np.allclose((wp + wm).coeffs, w.coeffs, atol=1e-12 * w.norm())
    assert np.allclose(flat.hodge_star(wp).coeffs, wp.coeffs, atol=1e-12 * w.norm())
    assert np.allclose(flat.hodge_star(wm).coeffs, -wm.coeffs, atol=1e-12 * w.norm())


def test_kaehler_forms_split():
    sd, asd = flat.sd_asd_decompose(flat.OMEGA)
    assert (asd.a2, asd.b2, asd.c2) == (0.0, 0.0, 0.0)
    assert (sd.a1, sd.b1) == (0.5, 0.5) and sd.c1 == 0.0
    sd, asd = flat.sd_asd_decompose(flat.OMEGA_P)
    assert (sd.a1, sd.b1, sd.c1) == (0.0, 0.0, 0.0)
    assert (asd.a2, asd.b2) == (-0.5, -0.5)


def test_omega_coordinate_expression():
    # Omega = dx1^dx2 - dx3^dx4 with Omega(X, Y) = G(JX, Y)
    dx = [basis_covector(i) for i in range(4)]
    assert np.allclose(flat.OMEGA.coeffs, (wedge(dx[0], dx[1]) - wedge(dx[2], dx[3])).coeffs)


@given(st.sampled_from([1, -1]), angle, vec4.filter(lambda m: abs(m[0] * m[3] - m[1] * m[2]) > 1e-2))
def test_null_planes_classified(eps, phi, m):
    p = flat.null_plane(NullPlaneParam(eps, phi)).reparametrize(m.reshape(2, 2))
    assert flat.is_totally_null(p)
    expected = DualityClass.ALPHA if eps == 1 else DualityClass.BETA
    assert flat.plane_duality_class(p) is expected
    assert flat.duality_class_via_hodge(p) is expected
    assert flat.plane_duality_class(p.to(DOUBLE_NULL)) is expected
    assert flat.is_holomorphic_lagrangian(p, "J_Omega") == (eps == 1)
    assert flat.is_holomorphic_lagrangian(p, "Jp_OmegaP") == (eps == -1)


@given(vec4, vec4)
def test_generic_planes_not_null(v, w):
    try:
        p = Plane22(Vec4(v), Vec4(w))
    except ValueError:
        assume(False)
    assume(flat.null_residual(p) > 1e-6)
    assert flat.plane_duality_class(p) is DualityClass.NOT_NULL
    assert flat.duality_class_via_hodge(p) is DualityClass.NOT_NULL
    assert not flat.is_holomorphic_lagrangian(p, "J_Omega")


def test_examples():
    # P^+_0 spanned by (1,0,1,0), (0,-1,0,-1); e1, e4
    p = Plane22(Vec4([1, 0, 1, 0]), Vec4([0, -1, 0, -1]))
    assert flat.plane_duality_class(p) is DualityClass.ALPHA
    q = Plane22(Vec4([1, 0, 0, 0]), Vec4([0, 0, 0, 1]))
    assert flat.plane_duality_class(q) is DualityClass.NOT_NULL
    # coordinate planes of the double null basis: Theta^3^Theta^4 is SD and does
    # not vanish on span(e3, e4), so that plane is beta; span(e2, e4) is alpha
    e = [Vec4(np.eye(4)[i], DOUBLE_NULL) for i in range(4)]
    assert flat.plane_duality_class(Plane22(e[2], e[3])) is DualityClass.BETA
    assert flat.plane_duality_class(Plane22(e[1], e[3])) is DualityClass.ALPHA
    assert flat.plane_duality_class(Plane22(e[0], e[2])) is DualityClass.ALPHA


def test_null_vector_is_null():
    for eps in (1, -1):
        v = flat.null_vector(NullPlaneParam(eps, 0.7), 0.3, -1.2)
        assert flat.flat_metric()(v, v) == pytest.approx(0.0, abs=1e-15)


def test_null_param_validation():
    with pytest.raises(ValueError):
        NullPlaneParam(0, 0.0)
    assert NullPlaneParam(1, 7.0).phi == pytest.approx(7.0 - 2 * np.pi)


def test_complex_structures():
    for J in (flat.cx_structure_J, flat.cx_structure_Jp):
        v = Vec4([0.3, -1.0, 2.0, 0.5])
        assert np.allclose(J(J(v)).components, -v.components)
        vd = v.to(DOUBLE_NULL)
        assert np.allclose(J(vd).to(COORDINATE).components, J(v).components)
