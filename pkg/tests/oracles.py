"""Independent reference computations used by the tests.

Curvature goes through sympy: Christoffel symbols, then
R^a_bcd = d_c G^a_db - d_d G^a_cb + G^a_ce G^e_db - G^a_de G^e_cb,
evaluated exactly at rational points. The metrics are written out from their
quadratic forms here rather than imported from the package.
"""

import functools

import numpy as np
import sympy as sp

X = sp.symbols("x0:4", real=True)
_A = sp.symbols("a0 a1 b0 b1", real=True)


def _from_quadratic(Q):
    return sp.Matrix(4, 4, lambda i, j: sp.diff(Q, _A[i], _A[j]) / 2)


def tn_metric(kind):
    """Neutral metric on TN from G(V,V) = 2 e^{2u} Im(conj(b) a - 2 eta u_xi |a|^2)."""
    r2 = X[0] ** 2 + X[1] ** 2
    e2u = {
        "flat": sp.Integer(1),
        "sphere": 4 / (1 + r2) ** 2,
        "hyperbolic": 4 / (1 - r2) ** 2,
        "custom": sp.exp(2 * (sp.Rational(3, 20) * r2 + sp.Rational(1, 10) * X[0])),
    }[kind]
    u = sp.log(e2u) / 2
    u_xi = (sp.diff(u, X[0]) - sp.I * sp.diff(u, X[1])) / 2
    c = sp.expand((X[2] + sp.I * X[3]) * u_xi)
    a0, a1, b0, b1 = _A
    Q = 2 * e2u * ((b0 * a1 - b1 * a0) - 2 * sp.im(c) * (a0**2 + a1**2))
    return _from_quadratic(Q)


def lh3_metric():
    """G(V,V) = -i (A conj(B)/p^2 - c.c.), p = 1 + mu1 conj(mu2), written in real form.

    With p = P + iQ: G(V,V) = 2 Im(A conj(B) conj(p)^2)/|p|^4.
    """
    x0, x1, x2, x3 = X
    P = 1 + x0 * x2 + x1 * x3
    Q = x1 * x2 - x0 * x3
    a0, a1, b0, b1 = _A
    re_ab, im_ab = a0 * b0 + a1 * b1, a1 * b0 - a0 * b1
    form = 2 * (re_ab * (-2 * P * Q) + im_ab * (P**2 - Q**2)) / (P**2 + Q**2) ** 2
    return _from_quadratic(form)


@functools.lru_cache(maxsize=None)
def _compiled(key):
    g = METRICS[key]()

    @functools.lru_cache(maxsize=None)
    def d(expr, *ks):
        # many entries coincide, so differentiate each distinct expression once
        return sp.diff(expr, *(X[k] for k in ks))

    dg = [[[d(g[i, j], k) for k in range(4)] for j in range(4)] for i in range(4)]
    ddg = [[[[d(g[i, j], *sorted((k, l))) for l in range(4)] for k in range(4)] for j in range(4)] for i in range(4)]
    return sp.lambdify(X, [g, dg, ddg], "numpy", cse=True)


METRICS = {
    "tn-flat": lambda: tn_metric("flat"),
    "tn-sphere": lambda: tn_metric("sphere"),
    "tn-hyperbolic": lambda: tn_metric("hyperbolic"),
    "tn-custom": lambda: tn_metric("custom"),
    "lh3": lh3_metric,
    "s2xr2": lambda: sp.diag(4 / (1 + X[0] ** 2 + X[1] ** 2) ** 2, 4 / (1 + X[0] ** 2 + X[1] ** 2) ** 2, -1, -1),
}


def exact_curvature(key, point):
    """(g, Gamma^a_bc, R_abcd) at a point from exact symbolic derivatives."""
    g, dg, ddg = (np.array(a, dtype=complex) for a in _compiled(key)(*map(float, point)))
    assert np.abs(g.imag).max() < 1e-12
    g, dg, ddg = g.real, dg.real, ddg.real  # dg[i, j, k] = d_k g_ij
    gi = np.linalg.inv(g)
    low = np.zeros((4, 4, 4))  # Gamma_dbc
    dlow = np.zeros((4, 4, 4, 4))  # d_k Gamma_dbc
    for d, b, c in np.ndindex(4, 4, 4):
        low[d, b, c] = (dg[d, b, c] + dg[d, c, b] - dg[b, c, d]) / 2
        dlow[d, b, c] = (ddg[d, b, c] + ddg[d, c, b] - ddg[b, c, d]) / 2
    gam = np.einsum("ad,dbc->abc", gi, low)
    dgi = -np.einsum("ae,efk,fd->adk", gi, dg, gi)
    dgam = np.einsum("adk,dbc->abck", dgi, low) + np.einsum("ad,dbck->abck", gi, dlow)
    Rup = (
        np.einsum("adbc->abcd", dgam)
        - np.einsum("acbd->abcd", dgam)
        + np.einsum("ace,edb->abcd", gam, gam)
        - np.einsum("ade,ecb->abcd", gam, gam)
    )
    return g, gam, np.einsum("ae,ebcd->abcd", g, Rup)


def weyl(g, R):
    """Weyl tensor C_abcd of a 4-metric from R_abcd (independent Kulkarni-Nomizu)."""
    gi = np.linalg.inv(g)
    ric = np.einsum("ac,abcd->bd", gi, R)
    S = np.einsum("bd,bd", gi, ric)
    P = (ric - S / 6 * g) / 2
    C = R.copy()
    for a, b, c, d in np.ndindex(4, 4, 4, 4):
        C[a, b, c, d] -= g[a, c] * P[b, d] + g[b, d] * P[a, c] - g[a, d] * P[b, c] - g[b, c] * P[a, d]
    return C
