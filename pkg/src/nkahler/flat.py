"""The flat neutral model R^{2,2}.

Metric ``ds^2 = (dx^1)^2 + (dx^2)^2 - (dx^3)^2 - (dx^4)^2``, its Hodge star on
2-forms (orientation: the double null coframe Theta^1..Theta^4 is positively
oriented), the self-dual / anti-self-dual splitting, classification of
2-planes into alpha-, beta- and non-null planes, the two compatible complex
structures and their symplectic forms, and the circle families of totally
null planes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import (
    COORDINATE,
    DOUBLE_NULL,
    PAIRS,
    THETA,
    Bilinear4,
    Form2,
    Plane22,
    Vec4,
    coeffs_to_matrix,
    hodge_matrix,
    matrix_to_coeffs,
    wedge_matrix,
)

NULL_TOL = 1e-10

FLAT_METRIC = np.diag([1.0, 1.0, -1.0, -1.0])
# Theta frame has det -4, so dx^1^..^dx^4 is negatively oriented
ORIENTATION = int(np.sign(np.linalg.det(THETA)))

J_MATRIX = np.array(
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
    ]
)
JP_MATRIX = np.array(
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)


def _pair_index(a, b):
    return PAIRS.index((a, b))


def _theta_pair(a, b):
    """Coefficient vector of Theta^a ^ Theta^b (1-based labels)."""
    c = np.zeros(6)
    c[_pair_index(a - 1, b - 1)] = 1.0
    return c


# *(T1^T4) = -T2^T3, *(T2^T4) = -T2^T4, *(T1^T3) = -T1^T3,
# *(T3^T4) = T3^T4,  *(T1^T2) = T1^T2, and *(T2^T3) = -T1^T4 by involution.
HODGE_TABLE = np.zeros((6, 6))
for (_src, _dst, _sgn) in [
    ((1, 2), (1, 2), 1.0),
    ((1, 3), (1, 3), -1.0),
    ((1, 4), (2, 3), -1.0),
    ((2, 3), (1, 4), -1.0),
    ((2, 4), (2, 4), -1.0),
    ((3, 4), (3, 4), 1.0),
]:
    HODGE_TABLE[_pair_index(_dst[0] - 1, _dst[1] - 1), _pair_index(_src[0] - 1, _src[1] - 1)] = _sgn

SD_BASIS = np.array(
    [
        _theta_pair(1, 2),
        _theta_pair(3, 4),
        _theta_pair(1, 4) - _theta_pair(2, 3),
    ]
)
ASD_BASIS = np.array(
    [
        _theta_pair(1, 3),
        _theta_pair(2, 4),
        _theta_pair(1, 4) + _theta_pair(2, 3),
    ]
)
# columns: a1, b1, c1, a2, b2, c2
_SPLIT = np.column_stack([*SD_BASIS, *ASD_BASIS])
_SPLIT_INV = np.linalg.inv(_SPLIT)


def flat_metric(basis=COORDINATE) -> Bilinear4:
    g = Bilinear4(FLAT_METRIC, COORDINATE)
    return g if basis == COORDINATE else g.to(basis)


def hodge_star(omega: Form2) -> Form2:
    """Hodge star by the double-null table; returns in the input's basis."""
    dn = omega.to(DOUBLE_NULL)
    out = Form2(HODGE_TABLE @ dn.coeffs, DOUBLE_NULL)
    return out.to(omega.basis)


def hodge_star_numeric(omega: Form2) -> Form2:
    """Hodge star from the metric and volume form (independent of the table)."""
    c = omega.to(COORDINATE)
    A = hodge_matrix(FLAT_METRIC, c.matrix, ORIENTATION)
    return Form2(matrix_to_coeffs(A), COORDINATE).to(omega.basis)


@dataclass(frozen=True)
class SDCoeffs:
    a1: float
    b1: float
    c1: float


@dataclass(frozen=True)
class ASDCoeffs:
    a2: float
    b2: float
    c2: float


def sd_basis():
    """Theta^1^Theta^2, Theta^3^Theta^4, Theta^1^Theta^4 - Theta^2^Theta^3."""
    return tuple(Form2(c, DOUBLE_NULL) for c in SD_BASIS)


def asd_basis():
    """Theta^1^Theta^3, Theta^2^Theta^4, Theta^1^Theta^4 + Theta^2^Theta^3."""
    return tuple(Form2(c, DOUBLE_NULL) for c in ASD_BASIS)


def recompose(sd: SDCoeffs | None = None, asd: ASDCoeffs | None = None) -> Form2:
    x = np.zeros(6)
    if sd is not None:
        x[:3] = (sd.a1, sd.b1, sd.c1)
    if asd is not None:
        x[3:] = (asd.a2, asd.b2, asd.c2)
    return Form2(_SPLIT @ x, DOUBLE_NULL)


def sd_asd_decompose(omega: Form2):
    x = _SPLIT_INV @ omega.to(DOUBLE_NULL).coeffs
    return SDCoeffs(*map(float, x[:3])), ASDCoeffs(*map(float, x[3:]))


# -- plane classification ---------------------------------------------------


class DualityClass(str, enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"
    NOT_NULL = "not_null"


def null_residual(p: Plane22) -> float:
    """max(|G(v,v)|, |G(w,w)|, |G(v,w)|) / scale^2."""
    q = p.to(COORDINATE)
    v, w = q.v.components, q.w.components
    vals = (v @ FLAT_METRIC @ v, w @ FLAT_METRIC @ w, v @ FLAT_METRIC @ w)
    return max(abs(x) for x in vals) / q.scale**2


def is_totally_null(p: Plane22, tol=NULL_TOL) -> bool:
    return null_residual(p) <= tol


def duality_residuals(p: Plane22):
    """Largest scale-normalized value of the SD and of the ASD basis forms on p."""
    q = p.to(DOUBLE_NULL)
    v, w = q.v.components, q.w.components
    s2 = q.scale**2

    def worst(basis):
        return max(abs(v @ coeffs_to_matrix(c) @ w) for c in basis) / s2

    return worst(SD_BASIS), worst(ASD_BASIS)


def plane_duality_class(p: Plane22, tol=NULL_TOL) -> DualityClass:
    sd, asd = duality_residuals(p)
    sd_zero, asd_zero = sd <= tol, asd <= tol
    if sd_zero and asd_zero:
        # the ASD and SD forms together span all 2-forms; some 2-form is nonzero on a rank-2 plane
        raise RuntimeError("all 2-forms vanish on a rank-2 plane")
    if sd_zero:
        return DualityClass.ALPHA
    if asd_zero:
        return DualityClass.BETA
    return DualityClass.NOT_NULL


def plane_dual_form(p: Plane22) -> Form2:
    """The 2-form v_flat ^ w_flat obtained by lowering both spanning vectors."""
    q = p.to(COORDINATE)
    vl = FLAT_METRIC @ q.v.components
    wl = FLAT_METRIC @ q.w.components
    return Form2(matrix_to_coeffs(wedge_matrix(vl, wl)), COORDINATE)


def duality_class_via_hodge(p: Plane22, tol=NULL_TOL) -> DualityClass:
    """Classification through the Hodge star instead of the explicit bases.

    SD forms annihilate p iff the lowered bivector of p is orthogonal to the
    SD subspace, i.e. anti-self-dual; likewise with the roles swapped.
    """
    nu = plane_dual_form(p)
    star = hodge_star(nu)
    s2 = p.to(COORDINATE).scale ** 2
    # |nu| can be as large as 2 |v||w| in these components
    if (star + nu).norm() <= tol * s2:
        return DualityClass.ALPHA
    if (star - nu).norm() <= tol * s2:
        return DualityClass.BETA
    return DualityClass.NOT_NULL


# -- Kaehler structures -----------------------------------------------------


def cx_structure_J(v: Vec4) -> Vec4:
    """J(X1,X2,X3,X4) = (-X2, X1, -X4, X3)."""
    c = v.to(COORDINATE)
    return Vec4(J_MATRIX @ c.components, COORDINATE).to(v.basis)


def cx_structure_Jp(v: Vec4) -> Vec4:
    """J'(X1,X2,X3,X4) = (-X2, X1, X4, -X3)."""
    c = v.to(COORDINATE)
    return Vec4(JP_MATRIX @ c.components, COORDINATE).to(v.basis)


def _kaehler_form(J):
    # Omega(X, Y) = G(JX, Y)
    return Form2.from_matrix(J.T @ FLAT_METRIC, COORDINATE)


OMEGA = _kaehler_form(J_MATRIX)
OMEGA_P = _kaehler_form(JP_MATRIX)

_STRUCTURES = {
    "J_Omega": (J_MATRIX, OMEGA),
    "Jp_OmegaP": (JP_MATRIX, OMEGA_P),
}


def holomorphic_lagrangian_residuals(p: Plane22, which="J_Omega"):
    """(holomorphic residual, Lagrangian residual), both scale-normalized."""
    J, Om = _STRUCTURES[which]
    q = p.to(COORDINATE)
    P = q.matrix
    s = q.scale
    hol = 0.0
    for x in (q.v.components, q.w.components):
        jx = J @ x
        coef, *_ = np.linalg.lstsq(P, jx, rcond=None)
        hol = max(hol, float(np.linalg.norm(P @ coef - jx)) / s)
    lag = abs(q.v.components @ Om.matrix @ q.w.components) / s**2
    return hol, lag


def is_holomorphic_lagrangian(p: Plane22, which="J_Omega", tol=NULL_TOL) -> bool:
    if which not in _STRUCTURES:
        raise ValueError(f"unknown structure {which!r}; use 'J_Omega' or 'Jp_OmegaP'")
    hol, lag = holomorphic_lagrangian_residuals(p, which)
    return hol <= tol and lag <= tol


# -- circle families of totally null planes ---------------------------------


@dataclass(frozen=True)
class NullPlaneParam:
    epsilon: int
    phi: float

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        object.__setattr__(self, "phi", float(self.phi) % (2 * np.pi))


def null_vector(param: NullPlaneParam, a: float, b: float) -> Vec4:
    c, s = np.cos(param.phi), np.sin(param.phi)
    return Vec4([a * c + b * s, a * s - b * c, a, -param.epsilon * b], COORDINATE)


def null_plane(param: NullPlaneParam) -> Plane22:
    return Plane22(null_vector(param, 1.0, 0.0), null_vector(param, 0.0, 1.0))
