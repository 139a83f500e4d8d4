import numpy as np
import pytest
import sympy as sp

import oracles
from nkahler import geodesics as gs, tn
from nkahler.curvature import (
    MetricField,
    check_asd,
    christoffel,
    flat_metric_field,
    null_coframe,
    report_from_derivatives,
    riemann_report,
)
from nkahler.errors import DegenerateMetricError, DomainError
from nkahler.linalg import THETA, hodge_matrix
from nkahler.tn import frame_metric_matrix

POINTS = [np.array([0.2, -0.3, 0.5, 0.4]), np.array([-0.45, 0.1, -1.0, 0.3])]


def field(key):
    if key == "lh3":
        return gs.lh3_metric_field()
    if key == "s2xr2":
        f = sp.lambdify(oracles.X, oracles.METRICS["s2xr2"](), "numpy")
        return MetricField(lambda x: np.array(f(*x), dtype=float), name="s2xr2", orientation=-1)
    name = key.split("-")[1]
    geom = tn.sample_custom_geometry() if name == "custom" else tn.ConformalGeometry.by_name(name)
    return tn.metric_field(geom)


@pytest.mark.parametrize("key", ["tn-sphere", "tn-hyperbolic", "tn-custom", "lh3", "s2xr2"])
@pytest.mark.parametrize("x", POINTS, ids=["p0", "p1"])
def test_fd_riemann_matches_exact(key, x):
    g, gam, R = oracles.exact_curvature(key, x)
    rep = riemann_report(field(key), x)
    assert np.allclose(rep.metric, g, atol=1e-14 * np.abs(g).max())
    assert np.allclose(rep.christoffel, gam, atol=1e-7 * (1 + np.abs(gam).max()))
    assert np.abs(rep.riemann - R).max() < 1e-5 * (1 + np.abs(R).max())
    C = oracles.weyl(g, R)
    assert np.abs(rep.weyl - C).max() < 1e-5 * (1 + np.abs(R).max())
    assert rep.bianchi_residual < 1e-8 and rep.pair_symmetry_residual < 1e-8


def test_exact_derivative_path():
    # with exact derivatives the formula itself is checked to rounding
    x = POINTS[0]
    fn = oracles._compiled("tn-custom")

    def parts(y):
        return [np.array(a, dtype=complex).real for a in fn(*y)]

    m = MetricField(lambda y: parts(y)[0], dg=lambda y: parts(y)[1], ddg=lambda y: parts(y)[2], orientation=-1)
    g, _, R = oracles.exact_curvature("tn-custom", x)
    assert np.allclose(riemann_report(m, x).riemann, R, atol=1e-12 * np.abs(R).max())


def test_s2xr2_scalar_and_sectional_curvature():
    rep = riemann_report(field("s2xr2"), POINTS[0])
    g = rep.metric
    assert rep.scalar == pytest.approx(2.0, abs=1e-7)
    assert rep.riemann[0, 1, 0, 1] == pytest.approx(g[0, 0] * g[1, 1], rel=1e-7)


@pytest.mark.parametrize("key", ["tn-sphere", "tn-hyperbolic"])
def test_constant_curvature_bases_are_asd(key):
    res = check_asd(field(key), POINTS)
    assert res.max_weyl_plus < 1e-5
    # constant Gauss curvature also kills W-, in line with the exact Weyl tensor
    g, _, R = oracles.exact_curvature(key, POINTS[0])
    assert np.abs(oracles.weyl(g, R)).max() < 1e-10 * np.abs(R).max()
    assert res.max_weyl_minus < 1e-5


def test_lh3_conformally_flat_and_scalar():
    res = check_asd(field("lh3"), POINTS)
    assert res.max_weyl_plus < 1e-5 and res.max_weyl_minus < 1e-5


def test_custom_base_keeps_weyl_plus_zero():
    rep = riemann_report(field("tn-custom"), POINTS[0])
    assert rep.weyl_plus_norm < 1e-5 and rep.weyl_minus_norm > 1e-2


def test_flat_fields_vanish():
    for m in (flat_metric_field(), field("tn-flat")):
        rep = riemann_report(m, POINTS[1])
        assert np.abs(rep.riemann).max() == 0.0 and rep.scalar == 0.0
        assert np.abs(christoffel(m, POINTS[1])).max() == 0.0


@pytest.mark.parametrize("key", ["tn-sphere", "lh3"])
def test_null_coframe(key):
    m = field(key)
    g = m(POINTS[0])
    th = null_coframe(g, m.orientation)
    assert np.allclose(frame_metric_matrix(th), g, atol=1e-12 * np.abs(g).max())
    assert np.sign(np.linalg.det(th)) == m.orientation
    assert np.allclose(null_coframe(np.diag([1.0, 1, -1, -1]), -1), THETA)


def test_weyl_block_uses_volume_orientation():
    # SD block rows of the flat-basis duality forms are +1 eigenvectors of the Hodge star
    from nkahler.curvature import duality_bases

    g = field("tn-sphere")(POINTS[0])
    sd, asd = duality_bases(null_coframe(g, -1))
    for A in sd:
        assert np.allclose(hodge_matrix(g, A, -1), A, atol=1e-10 * np.abs(A).max())
    for A in asd:
        assert np.allclose(hodge_matrix(g, A, -1), -A, atol=1e-10 * np.abs(A).max())


def test_conformal_rescaling():
    m = field("tn-custom")
    r1, r2 = riemann_report(m, POINTS[0]), riemann_report(m.scaled(2.5), POINTS[0])
    # C^a_bcd is invariant; the frame operator scales by 1/lambda
    mix1 = np.einsum("ae,ebcd->abcd", np.linalg.inv(r1.metric), r1.weyl)
    mix2 = np.einsum("ae,ebcd->abcd", np.linalg.inv(r2.metric), r2.weyl)
    assert np.allclose(mix1, mix2, atol=1e-7)
    assert np.allclose(r1.weyl_block, 2.5 * r2.weyl_block, atol=1e-7)


def test_domain_and_degeneracy():
    with pytest.raises(DomainError):
        riemann_report(field("tn-hyperbolic"), np.array([1.5, 0, 0, 0]))
    with pytest.raises(DomainError):
        riemann_report(field("lh3"), np.array([1.0, 0, -1.0, 0]))
    with pytest.raises(DegenerateMetricError):
        riemann_report(MetricField(lambda x: np.diag([1.0, 1.0, 0.0, -1.0])), POINTS[0])
    with pytest.raises(ValueError):
        MetricField(lambda x: np.triu(np.ones((4, 4))))(POINTS[0])
    with pytest.raises(ValueError):
        check_asd(field("lh3"), [])
