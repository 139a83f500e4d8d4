"""Check groups behind ``nk verify`` and the acceptance suite.

Each group returns a :class:`GroupResult` made of named :class:`Check` rows.
A check with ``counts=False`` is informational: it is reported but does not
affect the verdict (used for recorded comparisons against stated constants).
Randomness comes from ``numpy.random.default_rng([seed, group_id])`` so every
group is reproducible on its own.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import flat, geodesics as gs, tn
from .config import RunConfig
from .curvature import flat_metric_field, riemann_report
from .errors import NKError
from .linalg import (
    COORDINATE,
    DOUBLE_NULL,
    PAIRS,
    THETA,
    Covec4,
    Form2,
    Vec4,
    hodge_matrix,
)
from .surfaces import SurfaceMap, tensor_grid


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float | str | None = None
    tol: float | None = None
    note: str = ""
    counts: bool = True

    def to_dict(self):
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "value": _clean(self.value),
            "tol": _clean(self.tol),
            "note": self.note,
            "counts": self.counts,
        }


@dataclass(frozen=True)
class GroupResult:
    id: str
    title: str
    checks: tuple = field(default_factory=tuple)

    @property
    def passed(self):
        return all(c.passed for c in self.checks if c.counts)

    def to_dict(self):
        return {
            "id": self.id,
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _clean(v):
    if v is None or isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def _le(name, value, tol, note="", counts=True):
    return Check(name, bool(value <= tol), float(value), float(tol), note, counts)


def _rng(cfg, gid):
    return np.random.default_rng([int(cfg.seed), int(gid)])


# ---------------------------------------------------------------------------
# flat model
# ---------------------------------------------------------------------------


def _theta_wedge(a, b):
    c = np.zeros(6)
    c[PAIRS.index((a - 1, b - 1))] = 1.0
    return Form2(c, DOUBLE_NULL)


HODGE_TABLE_EXPECTED = [
    ((1, 4), (2, 3), -1.0),
    ((2, 4), (2, 4), -1.0),
    ((1, 3), (1, 3), -1.0),
    ((3, 4), (3, 4), 1.0),
    ((1, 2), (1, 2), 1.0),
]


def criterion_1(cfg: RunConfig):
    rng = _rng(cfg, 1)
    checks = []
    exact = True
    for src, dst, sgn in HODGE_TABLE_EXPECTED:
        out = flat.hodge_star(_theta_wedge(*src))
        exact &= np.array_equal(out.coeffs, (sgn * _theta_wedge(*dst)).coeffs)
    checks.append(Check("table_exact", bool(exact), note="five listed mappings, double-null basis"))
    worst = numeric = 0.0
    for _ in range(10 * cfg.samples):
        basis = COORDINATE if rng.random() < 0.5 else DOUBLE_NULL
        w = Form2(rng.normal(size=6), basis)
        ww = flat.hodge_star(flat.hodge_star(w))
        worst = max(worst, (ww - w).norm() / w.norm())
        numeric = max(numeric, (flat.hodge_star(w) - flat.hodge_star_numeric(w)).norm() / w.norm())
    checks.append(_le("involution_relative", worst, 1e-13, f"{10 * cfg.samples} random forms"))
    checks.append(_le("table_vs_metric_volume_star", numeric, 1e-12, "independent Hodge star"))
    return GroupResult("1", "Hodge table and involution", tuple(checks))


def criterion_2(cfg: RunConfig):
    rng = _rng(cfg, 2)
    eig = rec = 0.0
    for _ in range(10 * cfg.samples):
        w = Form2(rng.normal(size=6), COORDINATE if rng.random() < 0.5 else DOUBLE_NULL)
        sd, asd = flat.sd_asd_decompose(w)
        wp, wm = flat.recompose(sd=sd), flat.recompose(asd=asd)
        n = w.norm()
        rec = max(rec, ((wp + wm).to(w.basis) - w).norm() / n)
        eig = max(eig, (flat.hodge_star(wp) - wp).norm() / n, (flat.hodge_star(wm) + wm).norm() / n)
    sd, asd = flat.sd_asd_decompose(flat.OMEGA)
    om_asd = max(abs(x) for x in (asd.a2, asd.b2, asd.c2))
    sd2, asd2 = flat.sd_asd_decompose(flat.OMEGA_P)
    omp_sd = max(abs(x) for x in (sd2.a1, sd2.b1, sd2.c1))
    t14 = flat.sd_asd_decompose(_theta_wedge(1, 4))
    t14_err = max(abs(t14[0].c1 - 0.5), abs(t14[1].c2 - 0.5), abs(t14[0].a1), abs(t14[0].b1), abs(t14[1].a2), abs(t14[1].b2))
    return GroupResult(
        "2",
        "SD/ASD decomposition",
        (
            _le("eigenvector_residual", eig, 1e-12),
            _le("recompose_residual", rec, 1e-13),
            _le("Omega_asd_part", om_asd, 1e-15, "Omega is self-dual"),
            _le("OmegaPrime_sd_part", omp_sd, 1e-15, "Omega' is anti-self-dual"),
            _le("theta14_split", t14_err, 1e-15, "c1 = c2 = 1/2"),
        ),
    )


def _random_gl2(rng, max_cond=100.0):
    while True:
        m = rng.normal(size=(2, 2))
        if np.linalg.cond(m) < max_cond:
            return m


def _null_samples(cfg, rng):
    out = []
    for i in range(cfg.samples):
        eps = 1 if i % 2 == 0 else -1
        p = flat.null_plane(flat.NullPlaneParam(eps, rng.uniform(0, 2 * np.pi)))
        p = p.reparametrize(_random_gl2(rng) * rng.uniform(0.1, 10.0))
        if rng.random() < 0.5:
            p = p.to(DOUBLE_NULL)
        out.append((eps, p))
    return out


def _non_null_samples(cfg, rng):
    out = []
    while len(out) < cfg.samples:
        v, w = rng.normal(size=4), rng.normal(size=4)
        p = flat.Plane22(Vec4(v), Vec4(w))
        if not flat.is_totally_null(p, cfg.null_tol):
            out.append(p)
    return out


def criterion_3(cfg: RunConfig):
    rng = _rng(cfg, 3)
    wrong = agree_fail = 0
    worst_null = worst_dual = 0.0
    for eps, p in _null_samples(cfg, rng):
        cls = flat.plane_duality_class(p, cfg.null_tol)
        expect = flat.DualityClass.ALPHA if eps == 1 else flat.DualityClass.BETA
        wrong += cls != expect or not flat.is_totally_null(p, cfg.null_tol)
        agree_fail += flat.duality_class_via_hodge(p, cfg.null_tol) != cls
        sd, asd = flat.duality_residuals(p)
        worst_null = max(worst_null, flat.null_residual(p))
        worst_dual = max(worst_dual, sd if eps == 1 else asd)
    wrong_nn = 0
    for p in _non_null_samples(cfg, rng):
        cls = flat.plane_duality_class(p, cfg.null_tol)
        wrong_nn += cls != flat.DualityClass.NOT_NULL
        agree_fail += flat.duality_class_via_hodge(p, cfg.null_tol) != cls
    n = cfg.samples
    return GroupResult(
        "3",
        "Plane classification (alpha / beta / not null)",
        (
            Check("null_family_classified", wrong == 0, wrong, 0, f"{n} reparametrized P^eps_phi planes"),
            _le("null_residual", worst_null, 1e-10),
            _le("duality_residual", worst_dual, 1e-10),
            Check("non_null_classified", wrong_nn == 0, wrong_nn, 0, f"{n} random planes"),
            Check("basis_vs_hodge_agree", agree_fail == 0, agree_fail, 0),
        ),
    )


def criterion_4(cfg: RunConfig):
    rng = _rng(cfg, 4)
    bad_a = bad_b = 0
    for _, p in _null_samples(cfg, rng):
        cls = flat.plane_duality_class(p, cfg.null_tol)
        bad_a += (cls == flat.DualityClass.ALPHA) != flat.is_holomorphic_lagrangian(p, "J_Omega", cfg.null_tol)
        bad_b += (cls == flat.DualityClass.BETA) != flat.is_holomorphic_lagrangian(p, "Jp_OmegaP", cfg.null_tol)
    for p in _non_null_samples(cfg, rng):
        bad_a += flat.is_holomorphic_lagrangian(p, "J_Omega", cfg.null_tol)
        bad_b += flat.is_holomorphic_lagrangian(p, "Jp_OmegaP", cfg.null_tol)
    return GroupResult(
        "4",
        "Holomorphic-Lagrangian equivalence",
        (
            Check("alpha_iff_J_Omega", bad_a == 0, bad_a, 0),
            Check("beta_iff_Jp_OmegaP", bad_b == 0, bad_b, 0),
        ),
    )


def flat_properties(cfg: RunConfig):
    rng = _rng(cfg, 101)
    jj = comp = om = rt = ev = 0.0
    G = flat.FLAT_METRIC
    for _ in range(cfg.samples):
        v, w = Vec4(rng.normal(size=4)), Vec4(rng.normal(size=4))
        for J, Om in ((flat.cx_structure_J, flat.OMEGA), (flat.cx_structure_Jp, flat.OMEGA_P)):
            jj = max(jj, (J(J(v)) + v).norm())
            comp = max(comp, abs(J(v).components @ G @ J(w).components - v.components @ G @ w.components))
            om = max(om, abs(Om(v, w) - J(v).components @ G @ w.components))
        a = Covec4(rng.normal(size=4))
        rt = max(rt, (a.to(DOUBLE_NULL).to(COORDINATE) - a).norm() / a.norm())
        f = Form2(rng.normal(size=6))
        ev = max(ev, abs(f(v, w) - f.to(DOUBLE_NULL)(v.to(DOUBLE_NULL), w.to(DOUBLE_NULL))) / (f.norm() * v.norm() * w.norm()))
    g_dn = flat.flat_metric(DOUBLE_NULL).sym
    expected = np.zeros((4, 4))
    expected[0, 3] = expected[3, 0] = 0.5
    expected[1, 2] = expected[2, 1] = -0.5
    return GroupResult(
        "P-flat",
        "Flat-model invariants",
        (
            _le("J_squared_minus_one", jj, 1e-13),
            _le("J_isometry", comp, 1e-13),
            _le("Omega_is_G_J", om, 1e-13),
            _le("change_basis_roundtrip", rt, 1e-13),
            _le("form_eval_basis_invariant", ev, 1e-12),
            _le("double_null_metric_components", float(np.abs(g_dn - expected).max()), 1e-15),
        ),
    )


# ---------------------------------------------------------------------------
# TN
# ---------------------------------------------------------------------------

TN_GEOMETRIES = ("flat", "sphere", "hyperbolic")


def _random_tn_point(rng, geom):
    r = 0.9 if geom.name == "hyperbolic" else 2.0
    while True:
        xi = complex(*rng.uniform(-r, r, 2))
        if geom.domain(xi) and abs(xi) < r:
            return tn.PointTN(xi, complex(*rng.normal(size=2)))


def criterion_5(cfg: RunConfig):
    rng = _rng(cfg, 5)
    worst = worst_rescaled = 0.0
    consts = []
    geoms = [tn.ConformalGeometry.by_name(n) for n in TN_GEOMETRIES]
    for i in range(cfg.samples):
        geom = geoms[i % 3]
        p = _random_tn_point(rng, geom)
        G = tn.metric_matrix(geom, p)
        F = tn.frame_metric_matrix(tn.theta_frame_matrix(geom, p))
        Fr = tn.frame_metric_matrix(tn.theta_frame_matrix(geom, p, "rescaled"))
        scale = np.abs(G).max()
        worst = max(worst, np.abs(F - G).max() / scale)
        worst_rescaled = max(worst_rescaled, np.abs(Fr - G).max() / scale)
        consts.append(tn.fit_constant(F, G)[0])
    red = tn.flat_reduction_report()
    c_lo, c_hi = min(consts), max(consts)
    return GroupResult(
        "5",
        "TN double-null frame and flat reduction",
        (
            _le("frame_identity_printed", worst, 1e-12, f"fitted frame/metric constant in [{c_lo:.6g}, {c_hi:.6g}]"),
            _le("frame_identity_rescaled", worst_rescaled, 1e-12, "printed rows rescaled by (1,1,-1,-1)/sqrt2", counts=False),
            _le("u0_metric", red["metric_residual"], 1e-12, f"TN metric = {red['metric_scale']:.6g} x flat metric"),
            _le("u0_omega", red["omega_residual"], 1e-12, f"TN Omega = {red['omega_scale']:.6g} x flat Omega"),
            _le("u0_frame", red["frame_residual"], 1e-12, f"frame scales {red['frame_scales']}"),
            _le("u0_duality_spans", red["duality_span_residual"], 1e-12),
        ),
    )


def _eig_residuals(G, sd, asd, orientation):
    r = 0.0
    for A, s in [(A, 1.0) for A in sd] + [(A, -1.0) for A in asd]:
        r = max(r, np.abs(hodge_matrix(G, A, orientation) - s * A).max() / np.abs(A).max())
    return r


def criterion_6(cfg: RunConfig):
    rng = _rng(cfg, 6)
    checks = []
    n = max(1, cfg.samples // 10)
    for geom in [tn.ConformalGeometry.by_name(g) for g in TN_GEOMETRIES] + [tn.sample_custom_geometry()]:
        worst = imag = 0.0
        for _ in range(n):
            p = _random_tn_point(rng, geom)
            sd, asd = tn.duality_matrices(geom, p)
            worst = max(worst, _eig_residuals(tn.metric_matrix(geom, p), sd, asd, tn.orientation_tn(geom, p)))
            pc = tn.printed_c2_element(geom, p)
            imag = max(imag, np.abs(pc.imag).max() / np.abs(pc).max())
        checks.append(_le(f"tn_{geom.name}", worst, 1e-9, f"{n} points"))
        if geom.name != "flat":
            checks.append(
                Check(f"tn_{geom.name}_printed_c2_imag_part", True, imag, None, "printed c2 element is not a real form", counts=False)
            )
    worst = 0.0
    for _ in range(n):
        g = gs.lh3_point_sampler(rng)
        sd, asd = gs.duality_matrices_lh3(g)
        worst = max(worst, _eig_residuals(gs.metric_matrix_lh3(g), sd, asd, gs.orientation_lh3(g)))
    checks.append(_le("lh3", worst, 1e-9, f"{n} points"))
    return GroupResult("6", "SD/ASD coordinate bases are Hodge eigenvectors", tuple(checks))


TN_BETA_PARAMS = (
    tn.BetaParamsTN(0.0, 0j, 0j),
    tn.BetaParamsTN(0.4, 0j, 0j),
    tn.BetaParamsTN(0.0, 0j, 0.3j),
    tn.BetaParamsTN(0.4, 0.1 + 0.05j, 0.3 - 0.2j),
)


def _fmt_params(p):
    return f"C0={p.C0:g},xi0={complex(p.xi0):g},eta0={complex(p.eta0):g}"


def criterion_7(cfg: RunConfig):
    n = cfg.grid
    checks = []
    grid_tn = tensor_grid(np.linspace(-0.5, 0.5, n), np.linspace(-1.0, 1.0, n))
    for name in TN_GEOMETRIES:
        geom = tn.ConformalGeometry.by_name(name)
        for prm in TN_BETA_PARAMS:
            r = tn.surface_grid_residuals(geom, tn.beta_surface_tn(geom, prm), grid_tn)
            tag = f"tn_{name}[{_fmt_params(prm)}]"
            checks.append(_le(f"{tag}_asd_max", r.max_asd, 1e-9))
            checks.append(Check(f"{tag}_sd_min", r.min_sd >= 1e-3, r.min_sd, 1e-3))
        fib = tn.surface_grid_residuals(geom, tn.fibre_surface(geom, 0.2 + 0.1j), grid_tn)
        checks.append(_le(f"tn_{name}_fibre_sd_max", fib.max_sd, 1e-12))
    for prm in (gs.BetaParamsH3("torus", C1=1.0), gs.BetaParamsH3("torus", C1=0.5), gs.BetaParamsH3("lh2", C0=0.3)):
        r = gs.surface_grid_residuals_h3(gs.beta_surface_h3(prm), gs.default_grid(prm, n))
        tag = f"lh3_{prm.case}[C0={prm.C0:g},C1={prm.C1:g}]"
        checks.append(_le(f"{tag}_asd_max", r.max_asd, 1e-9))
        checks.append(Check(f"{tag}_sd_min", r.min_sd >= 1e-3, r.min_sd, 1e-3))
    printed = gs.BetaParamsH3("torus", C1=1.0, variant="printed")
    r = gs.surface_grid_residuals_h3(gs.beta_surface_h3(printed), gs.default_grid(printed, n))
    checks.append(Check("lh3_torus_printed_mu2_asd_max", True, r.max_asd, None, "displayed mu2 = sin v e^{iv}/C1", counts=False))
    return GroupResult("7", "Beta-surface pullback residuals", tuple(checks))


# ---------------------------------------------------------------------------
# Phi map, lines in a plane
# ---------------------------------------------------------------------------


def criterion_8(cfg: RunConfig):
    rng = _rng(cfg, 8)
    rt = fit = step = 0.0
    for _ in range(10 * cfg.samples):
        rad = 10.0 * math.sqrt(rng.random())
        xi = rad * complex(math.cos(a := rng.uniform(0, 2 * np.pi)), math.sin(a))
        eta = complex(*rng.normal(size=2))
        r = rng.normal()
        e2, r2 = gs.phi_inverse(xi, gs.phi_map(gs.OrientedLineE3(xi, eta), r))
        rt = max(rt, abs(e2 - eta), abs(r2 - r))
    for _ in range(cfg.samples):
        line = gs.OrientedLineE3(complex(*rng.normal(size=2)), complex(*rng.normal(size=2)))
        pts = np.array([gs.phi_map(line, r).as_array() for r in (0.0, 1.0, 2.0)])
        fit = max(fit, gs.affine_fit_residual(pts))
        step = max(step, abs(np.linalg.norm(pts[1] - pts[0]) - 1), abs(np.linalg.norm(pts[2] - pts[1]) - 1))
    return GroupResult(
        "8",
        "Phi map round trip and affine images",
        (
            _le("roundtrip_abs", rt, 1e-12, f"{10 * cfg.samples} samples, |xi| <= 10"),
            _le("line_fit", fit, 1e-12),
            _le("unit_speed", step, 1e-12),
        ),
    )


def criterion_9(cfg: RunConfig):
    vals = np.linspace(-2.0, 2.0, 20)
    checks = []
    for C0 in (0.0, 0.5, 1.0, math.pi / 2, 2.5):
        res = gs.lines_in_plane(C0, vals, vals, vals)
        checks.append(_le(f"planarity_C0={C0:.6g}", res.planarity_residual, 1e-12))
        checks.append(_le(f"display_C0={C0:.6g}", res.display_residual, 1e-12))
    return GroupResult("9", "Lines in a plane", tuple(checks))


# ---------------------------------------------------------------------------
# geodesic curvature
# ---------------------------------------------------------------------------


def _embedded_sphere_curvature(C1, s, h=1e-3):
    """Signed geodesic curvature of the image curve on the unit sphere in R^3."""

    def X(x):
        return gs.line_direction(complex(x, C1))

    d1 = (-X(s + 2 * h) + 8 * X(s + h) - 8 * X(s - h) + X(s - 2 * h)) / (12 * h)
    d2 = (-X(s + 2 * h) + 16 * X(s + h) - 30 * X(s) + 16 * X(s - h) - X(s - 2 * h)) / (12 * h * h)
    return float(np.cross(X(s), d1) @ d2) / np.linalg.norm(d1) ** 3


def criterion_10(cfg: RunConfig):
    sphere = tn.ConformalGeometry.sphere()
    ss = np.linspace(-2.0, 2.0, 200)
    checks = []
    ratios, frame_means = [], {}
    for C1 in (0.0, 0.5, 1.0, 2.0):
        curve = lambda s, C1=C1: complex(s, C1)  # noqa: E731
        unit = np.array([tn.geodesic_curvature(sphere, curve, "unit_frame", lambda s: 1.0, lambda s: 0.0)(s) for s in ss])
        half = np.array([tn.geodesic_curvature(sphere, curve, "paper_frame")(s) for s in ss])
        oracle = np.array([tn.frame_curvature_fd(sphere, curve, s) for s in ss])
        embed = np.array([_embedded_sphere_curvature(C1, s) for s in ss[::10]])
        m = float(unit.mean())
        checks.append(_le(f"unit_std_C1={C1:g}", float(unit.std()), 1e-8 * (1 + abs(m)), f"mean {m:.6g}"))
        checks.append(_le(f"unit_vs_fd_oracle_C1={C1:g}", float(np.abs(unit - oracle).max()), 1e-6))
        checks.append(_le(f"unit_vs_embedding_C1={C1:g}", float(np.abs(np.abs(unit[::10]) - np.abs(embed)).max()), 1e-6))
        pm = float(half.mean())
        checks.append(_le(f"frame_std_C1={C1:g}", float(half.std()), 1e-8 * (1 + abs(pm)), f"mean {pm:.6g}"))
        frame_means[C1] = pm
        if C1 != 0:
            ratios.append(pm / m)
    spread = max(ratios) - min(ratios)
    ratio = float(np.mean(ratios))
    checks.append(_le("frame_over_unit_ratio_constant", spread, 1e-8, f"ratio {ratio:.10g} (1/(2 sqrt 2) = {1 / (2 * math.sqrt(2)):.10g})"))
    claim = max(abs(frame_means[c] - math.sqrt(2) * c) for c in frame_means)
    checks.append(
        Check(
            "stated_sqrt2_C1",
            claim <= 1e-6,
            claim,
            1e-6,
            f"paper_frame gives {ratio:.6g} C1, unit_frame gives C1; stated sqrt2 C1 differs by a factor {math.sqrt(2) / ratio:.6g}",
            counts=False,
        )
    )
    return GroupResult("10", "Geodesic curvature of base curves", tuple(checks))


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------


def _curv_points_tn(rng, geom, n):
    return [_random_tn_point(rng, geom).chart() * np.array([1, 1, 0.5, 0.5]) for _ in range(n)]


def criterion_11(cfg: RunConfig):
    rng = _rng(cfg, 11)
    n = cfg.curvature_points
    checks = []
    for name in ("sphere", "hyperbolic"):
        geom = tn.ConformalGeometry.by_name(name)
        m = tn.metric_field(geom)
        reps = [riemann_report(m, x) for x in _curv_points_tn(rng, geom, n)]
        checks.append(_le(f"tn_{name}_weyl_plus", max(r.weyl_plus_norm for r in reps), 1e-5, f"{n} points"))
        checks.append(_le(f"tn_{name}_bianchi", max(r.bianchi_residual for r in reps), cfg.fd_tol))
    m = gs.lh3_metric_field()
    reps = [riemann_report(m, gs.lh3_point_sampler(rng).chart()) for _ in range(n)]
    checks.append(_le("lh3_weyl_plus", max(r.weyl_plus_norm for r in reps), 1e-5))
    checks.append(_le("lh3_weyl_minus", max(r.weyl_minus_norm for r in reps), 1e-5))
    checks.append(_le("lh3_scalar", max(abs(r.scalar) for r in reps), 1e-5, counts=False))
    geom = tn.ConformalGeometry.flat()
    m = tn.metric_field(geom)
    worst = 0.0
    for x in _curv_points_tn(rng, geom, n):
        r = riemann_report(m, x)
        worst = max(worst, np.abs(r.riemann).max(), np.abs(r.ricci).max(), abs(r.scalar), r.weyl_plus_norm, r.weyl_minus_norm)
    checks.append(_le("tn_flat_all_curvature", worst, 1e-9))
    # non-constant curvature: mixed Weyl component against the closed form
    geom = tn.sample_custom_geometry()
    m = tn.metric_field(geom)
    fd, formula = [], []
    while len(fd) < n:
        x = _random_tn_point(rng, geom).chart() * np.array([0.5, 0.5, 1, 1])
        p = tn.PointTN.from_chart(x)
        w = tn.weyl_component(geom, p)
        if abs(w) < 1e-2:
            continue
        rep = riemann_report(m, x)
        fd.append(rep.mixed_weyl_component((tn.VXI, tn.VXI.conj()), (tn.DETA, tn.DETA.conj())))
        formula.append(w)
    fd, formula = np.array(fd), np.array(formula)
    const = fd[0] / formula[0]
    rel = float(np.max(np.abs(fd - const * formula) / np.abs(fd)))
    checks.append(_le("custom_weyl_component_match", rel, 1e-3, f"global constant {const.real:.6g}{const.imag:+.3g}i"))
    checks.append(
        Check(
            "custom_weyl_minus_frame_norm",
            True,
            float(max(riemann_report(m, x).weyl_minus_norm for x in _curv_points_tn(rng, geom, 3))),
            None,
            "frame-dependent Frobenius norm; not proportional to |W| (nilpotent block)",
            counts=False,
        )
    )
    return GroupResult("11", "Curvature: anti-self-duality and conformal flatness", tuple(checks))


def curvature_properties(cfg: RunConfig):
    rng = _rng(cfg, 111)
    # flat metric in curvilinear coordinates x -> (x0 + 0.3 sin x1, ...)
    def phi_jac(x):
        return np.array(
            [
                [1.0, 0.3 * math.cos(x[1]), 0.0, 0.0],
                [0.0, 1.0, 0.2 * x[2], 0.0],
                [0.0, 0.0, 1.0, 0.25 * math.cos(x[3])],
                [0.1 * x[0], 0.0, 0.0, 1.0],
            ]
        )

    from .curvature import MetricField

    curvy = MetricField(lambda x: phi_jac(x).T @ flat.FLAT_METRIC @ phi_jac(x), name="curvilinear-flat", richardson=False)
    ratios = []
    for _ in range(10):
        x = rng.uniform(-0.5, 0.5, 4)
        r1 = np.abs(riemann_report(curvy, x, step=0.02, richardson=False).riemann).max()
        r2 = np.abs(riemann_report(curvy, x, step=0.01, richardson=False).riemann).max()
        ratios.append(r1 / r2)
    m = tn.metric_field(tn.sample_custom_geometry())
    x = np.array([0.2, -0.1, 0.4, 0.3])
    w1 = riemann_report(m, x).weyl_block
    # the orthonormal-frame operator of lam*g is (1/lam) times that of g
    w2 = riemann_report(m.scaled(3.7), x).weyl_block
    conf = float(np.abs(w1 - 3.7 * w2).max() / np.abs(w1).max())
    gam = np.abs(riemann_report(tn.metric_field(tn.ConformalGeometry.flat()), x).christoffel).max()
    fl = riemann_report(flat_metric_field(), x)
    return GroupResult(
        "P-curvature",
        "Curvature kernel invariants",
        (
            Check("fd_observed_order", math.log2(min(ratios)) >= 1.8, math.log2(min(ratios)), 1.8, "step halving, no extrapolation"),
            _le("conformal_invariance_weyl_operator", conf, 1e-6),
            _le("flat_tn_christoffel", gam, 1e-10),
            _le("flat_r22_riemann", float(np.abs(fl.riemann).max()), 1e-9),
        ),
    )


# ---------------------------------------------------------------------------
# torus circles
# ---------------------------------------------------------------------------


def _circle_checks(prefix, mu1_fn, mu2_fn, C1, counts=True):
    tc = gs.torus_circles(C1)
    us = gs.torus_parameter_samples(1000)
    m1 = [mu1_fn(u) for u in us]
    m2 = [mu2_fn(u) for u in us]
    inc1, inc2 = tc.incidence(m1, m2)
    refl = tc.reflection_residual(m1)
    e1 = np.array([gs.stereographic_array(m) for m in m1])
    e2 = np.array([-gs.stereographic_array(m) for m in m2])
    c1, c2 = gs.Circle3.fit(e1), gs.Circle3.fit(e2)
    count = gs.circle_intersection_count(c1, c2)
    expected_r = 1 / math.sqrt(1 + C1 * C1)
    return [
        _le(f"{prefix}incidence_first", inc1, 1e-12, "y + C1(z - 1) = 0", counts),
        _le(f"{prefix}incidence_second", inc2, 1e-12, "y - C1(z + 1) = 0", counts),
        _le(f"{prefix}reflection", refl, 1e-12, counts=counts),
        _le(f"{prefix}equal_radii", abs(c1.radius - c2.radius), 1e-12, f"radii {c1.radius:.12g}, {c2.radius:.12g}", counts),
        _le(f"{prefix}radius_value", abs(c1.radius - expected_r), 1e-12, counts=counts),
        Check(f"{prefix}single_intersection", count == 1, count, 1, "analytic plane-plane-sphere count", counts),
    ]


def criterion_12(cfg: RunConfig):
    C1 = 1.0
    lib = gs.BetaParamsH3("torus", C1=C1)
    checks = _circle_checks("", lambda u: gs.torus_mu1(C1, u), lambda v: gs.torus_mu2(C1, v, "beta"), C1)
    contact = gs.boundary_contact(lib)
    checks.append(Check("unique_zero_distance_pair", contact.n_zero == 1, contact.n_zero, 1, f"min distance {contact.min_distance:.3e}"))
    checks.append(Check("second_minimum", contact.second_minimum >= 0.1, contact.second_minimum, 0.1))
    checks += _circle_checks(
        "printed_torus:", lambda u: gs.torus_mu1(C1, u), lambda v: gs.torus_mu2(C1, v, "printed"), C1, counts=False
    )
    # the drawn configuration corresponds to the labels exchanged
    swapped1 = lambda u: math.sin(u) * complex(math.cos(u), math.sin(u)) / C1  # noqa: E731
    swapped2 = lambda v: C1 * complex(math.cos(v), math.sin(v)) / math.sin(v)  # noqa: E731
    checks += _circle_checks("swapped_labels:", swapped1, swapped2, C1, counts=False)
    S = SurfaceMap(
        lambda u, v: gs.GeodesicH3(swapped1(u), swapped2(v)),
        None,
    )
    r = gs.surface_grid_residuals_h3(S, tensor_grid(np.linspace(0.2, 1.2, 12), np.linspace(1.6, 2.9, 12)))
    checks.append(Check("swapped_labels:asd_max", r.max_asd <= 1e-9, r.max_asd, 1e-9, "is this surface beta?", counts=False))
    return GroupResult("12", "Torus boundary circles", tuple(checks))


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

GROUPS = {
    "1": criterion_1,
    "2": criterion_2,
    "3": criterion_3,
    "4": criterion_4,
    "P-flat": flat_properties,
    "5": criterion_5,
    "6": criterion_6,
    "7": criterion_7,
    "8": criterion_8,
    "9": criterion_9,
    "10": criterion_10,
    "11": criterion_11,
    "P-curvature": curvature_properties,
    "12": criterion_12,
}

SUITES = {
    "flat": ("1", "2", "3", "4", "P-flat"),
    "tn": ("5", "6", "7", "10"),
    "lh3": ("6", "7", "8", "9", "12"),
    "curvature": ("11", "P-curvature"),
}
SUITES["all"] = tuple(dict.fromkeys(k for s in ("flat", "tn", "lh3", "curvature") for k in SUITES[s]))


def run_suite(suite: str, cfg: RunConfig):
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    groups = []
    for gid in SUITES[suite]:
        try:
            groups.append(GROUPS[gid](cfg))
        except NKError as exc:  # a kernel error is a failed group, not a crash
            groups.append(GroupResult(gid, "error", (Check("raised", False, None, None, f"{type(exc).__name__}: {exc}"),)))
    return groups


def report_json(suite, cfg: RunConfig, groups):
    doc = {
        "suite": suite,
        # the output path does not influence results, so it stays out of the report
        "config": {k: _clean(v) for k, v in cfg.to_dict().items() if k != "out"},
        "passed": all(g.passed for g in groups),
        "groups": [g.to_dict() for g in groups],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def format_group(g: GroupResult):
    lines = [f"[{'PASS' if g.passed else 'FAIL'}] {g.id}: {g.title}"]
    for c in g.checks:
        flag = ("ok" if c.passed else "FAIL") if c.counts else "info"
        val = c.value if isinstance(c.value, str) or c.value is None else f"{c.value:.6e}"
        tol = "" if c.tol is None else f" (tol {c.tol:.6e})"
        note = f"  {c.note}" if c.note else ""
        lines.append(f"    {flag:4s} {c.name} = {val}{tol}{note}")
    return "\n".join(lines)
