"""Small fixed-shape linear algebra on a 4-dimensional real vector space.

Vectors, covectors, symmetric bilinear forms and 2-forms carry a basis tag.
For the flat model two bases are registered: the standard coordinate basis
``dx^1..dx^4`` and the double null basis

    Theta^1 = dx^1 + dx^3,   Theta^2 = dx^2 - dx^4,
    Theta^3 = -dx^2 - dx^4,  Theta^4 = dx^1 - dx^3.

A third tag, ``"chart"``, marks components in the real coordinates of a
curved chart (tangent bundle or line space); it has no registered
conversions.

2-forms are stored by their six coefficients over ``theta^a ^ theta^b``
for ``(a, b)`` in ``PAIRS`` = (12, 13, 14, 23, 24, 34), with the wedge
convention ``(a ^ b)(V, W) = a(V) b(W) - a(W) b(V)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import BasisMismatchError, RankDeficientError, UnknownBasisError

COORDINATE = "coordinate"
DOUBLE_NULL = "double-null"
CHART = "chart"
BASES = (COORDINATE, DOUBLE_NULL, CHART)

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# rows: Theta^a expressed in dx components
THETA = np.array(
    [
        [1.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, -1.0],
        [0.0, -1.0, 0.0, -1.0],
        [1.0, 0.0, -1.0, 0.0],
    ]
)
THETA_INV = np.linalg.inv(THETA)

RANK_TOL = 1e-9


def _levi_civita():
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        sign = 1
        p = list(perm)
        for i in range(4):
            for j in range(i + 1, 4):
                if p[i] > p[j]:
                    sign = -sign
        eps[perm] = sign
    return eps


LEVI_CIVITA = _levi_civita()


def _frozen(a, shape):
    arr = np.array(a, dtype=float)
    if arr.shape != shape:
        raise ValueError(f"expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("components must be finite")
    arr.setflags(write=False)
    return arr


def _check_basis(tag):
    if tag not in BASES:
        raise UnknownBasisError(f"unknown basis tag {tag!r}")


def _same_basis(x, y):
    if x.basis != y.basis:
        raise BasisMismatchError(f"basis mismatch: {x.basis!r} vs {y.basis!r}")


# -- raw matrix helpers (also used directly by the chart modules) -----------


def wedge_matrix(a, b):
    """Antisymmetric matrix of ``a ^ b``; works for complex covectors."""
    a = np.asarray(a)
    b = np.asarray(b)
    return np.outer(a, b) - np.outer(b, a)


def sym_product(a, b):
    """Matrix of the symmetrized product ``(a (x) b + b (x) a) / 2``."""
    a = np.asarray(a)
    b = np.asarray(b)
    return 0.5 * (np.outer(a, b) + np.outer(b, a))


def coeffs_to_matrix(c):
    c = np.asarray(c)
    A = np.zeros((4, 4), dtype=c.dtype)
    for k, (i, j) in enumerate(PAIRS):
        A[i, j] = c[k]
        A[j, i] = -c[k]
    return A


def matrix_to_coeffs(A):
    A = np.asarray(A)
    return np.array([A[i, j] for i, j in PAIRS])


def hodge_matrix(g, A, orientation=1):
    """Hodge star of the 2-form with antisymmetric matrix ``A``.

    ``g`` is the metric matrix in the same coordinates and ``orientation`` is
    +1 if ``dx^1 ^ ... ^ dx^4`` is positively oriented, -1 otherwise.
    Uses ``(*A)_cd = 1/2 A^ab eps_abcd`` with ``eps = orientation sqrt|det g| [abcd]``.
    """
    g = np.asarray(g, dtype=float)
    ginv = np.linalg.inv(g)
    A_up = ginv @ np.asarray(A) @ ginv.T
    vol = orientation * np.sqrt(abs(np.linalg.det(g)))
    return 0.5 * vol * np.einsum("ab,abcd->cd", A_up, LEVI_CIVITA)


def transform_matrix(basis_from, basis_to):
    """Matrix ``M`` with ``V_to = M @ V_from`` for vector components."""
    _check_basis(basis_from)
    _check_basis(basis_to)
    if basis_from == basis_to:
        return np.eye(4)
    if CHART in (basis_from, basis_to):
        raise UnknownBasisError("no registered conversion for chart components")
    if basis_from == COORDINATE:
        return THETA
    return THETA_INV


# -- tagged value types -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class Vec4:
    components: np.ndarray
    basis: str = COORDINATE

    def __post_init__(self):
        _check_basis(self.basis)
        object.__setattr__(self, "components", _frozen(self.components, (4,)))

    def __add__(self, other):
        _same_basis(self, other)
        return Vec4(self.components + other.components, self.basis)

    def __sub__(self, other):
        _same_basis(self, other)
        return Vec4(self.components - other.components, self.basis)

    def __mul__(self, k):
        return Vec4(k * self.components, self.basis)

    __rmul__ = __mul__

    def __neg__(self):
        return Vec4(-self.components, self.basis)

    def norm(self):
        return float(np.linalg.norm(self.components))

    def to(self, basis):
        return change_basis(self, basis)

    def __repr__(self):
        return f"Vec4({self.components.tolist()}, {self.basis!r})"


@dataclass(frozen=True, eq=False)
class Covec4:
    components: np.ndarray
    basis: str = COORDINATE

    def __post_init__(self):
        _check_basis(self.basis)
        object.__setattr__(self, "components", _frozen(self.components, (4,)))

    def __call__(self, v: Vec4) -> float:
        _same_basis(self, v)
        return float(self.components @ v.components)

    def __add__(self, other):
        _same_basis(self, other)
        return Covec4(self.components + other.components, self.basis)

    def __sub__(self, other):
        _same_basis(self, other)
        return Covec4(self.components - other.components, self.basis)

    def __mul__(self, k):
        return Covec4(k * self.components, self.basis)

    __rmul__ = __mul__

    def __neg__(self):
        return Covec4(-self.components, self.basis)

    def norm(self):
        return float(np.linalg.norm(self.components))

    def to(self, basis):
        return change_basis(self, basis)

    def __repr__(self):
        return f"Covec4({self.components.tolist()}, {self.basis!r})"


@dataclass(frozen=True, eq=False)
class Bilinear4:
    sym: np.ndarray
    basis: str = COORDINATE

    def __post_init__(self):
        _check_basis(self.basis)
        m = _frozen(self.sym, (4, 4))
        if not np.array_equal(m, m.T):
            raise ValueError("bilinear form matrix must be exactly symmetric")
        object.__setattr__(self, "sym", m)

    @classmethod
    def symmetrized(cls, m, basis=COORDINATE):
        m = np.asarray(m, dtype=float)
        return cls(0.5 * (m + m.T), basis)

    def __call__(self, v: Vec4, w: Vec4) -> float:
        return eval_bilinear(self, v, w)

    def to(self, basis):
        return change_basis(self, basis)


@dataclass(frozen=True, eq=False)
class Form2:
    coeffs: np.ndarray
    basis: str = COORDINATE

    def __post_init__(self):
        _check_basis(self.basis)
        object.__setattr__(self, "coeffs", _frozen(self.coeffs, (6,)))

    @classmethod
    def from_matrix(cls, A, basis=COORDINATE, atol=1e-12):
        A = np.asarray(A)
        if np.iscomplexobj(A):
            if np.abs(A.imag).max() > atol * max(1.0, np.abs(A).max()):
                raise ValueError("2-form matrix has a non-negligible imaginary part")
            A = A.real
        if np.abs(A + A.T).max() > atol * max(1.0, np.abs(A).max()):
            raise ValueError("2-form matrix must be antisymmetric")
        return cls(matrix_to_coeffs(A), basis)

    @classmethod
    def zero(cls, basis=COORDINATE):
        return cls(np.zeros(6), basis)

    @property
    def matrix(self):
        return coeffs_to_matrix(self.coeffs)

    def __call__(self, v: Vec4, w: Vec4) -> float:
        _same_basis(self, v)
        _same_basis(self, w)
        return float(v.components @ self.matrix @ w.components)

    def __add__(self, other):
        _same_basis(self, other)
        return Form2(self.coeffs + other.coeffs, self.basis)

    def __sub__(self, other):
        _same_basis(self, other)
        return Form2(self.coeffs - other.coeffs, self.basis)

    def __mul__(self, k):
        return Form2(k * self.coeffs, self.basis)

    __rmul__ = __mul__

    def __neg__(self):
        return Form2(-self.coeffs, self.basis)

    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def to(self, basis):
        return change_basis(self, basis)

    def __repr__(self):
        return f"Form2({self.coeffs.tolist()}, {self.basis!r})"


def wedge(a: Covec4, b: Covec4) -> Form2:
    _same_basis(a, b)
    return Form2.from_matrix(wedge_matrix(a.components, b.components), a.basis)


def eval_bilinear(g: Bilinear4, v: Vec4, w: Vec4) -> float:
    _same_basis(g, v)
    _same_basis(g, w)
    return float(v.components @ g.sym @ w.components)


def change_basis(x, to: str):
    """Re-express a tagged vector, covector, bilinear form or 2-form in ``to``."""
    M = transform_matrix(x.basis, to)
    if isinstance(x, Vec4):
        return Vec4(M @ x.components, to)
    # covariant objects transform with the inverse
    Minv = transform_matrix(to, x.basis)
    if isinstance(x, Covec4):
        return Covec4(Minv.T @ x.components, to)
    if isinstance(x, Bilinear4):
        m = Minv.T @ x.sym @ Minv
        return Bilinear4(0.5 * (m + m.T), to)
    if isinstance(x, Form2):
        return Form2(matrix_to_coeffs(Minv.T @ x.matrix @ Minv), to)
    raise TypeError(f"cannot change basis of {type(x).__name__}")


def basis_covector(i: int, basis=COORDINATE) -> Covec4:
    """``dx^{i+1}`` or ``Theta^{i+1}`` (0-based index)."""
    c = np.zeros(4)
    c[i] = 1.0
    return Covec4(c, basis)


def basis_vector(i: int, basis=COORDINATE) -> Vec4:
    c = np.zeros(4)
    c[i] = 1.0
    return Vec4(c, basis)


@dataclass(frozen=True, eq=False)
class Plane22:
    """A 2-plane spanned by two linearly independent vectors."""

    v: Vec4
    w: Vec4

    def __post_init__(self):
        _same_basis(self.v, self.w)
        sv = np.linalg.svd(self.matrix, compute_uv=False)
        if sv[0] == 0.0 or sv[1] <= RANK_TOL * sv[0]:
            raise RankDeficientError("spanning vectors are linearly dependent")

    @property
    def basis(self):
        return self.v.basis

    @property
    def matrix(self):
        return np.column_stack([self.v.components, self.w.components])

    @property
    def scale(self):
        return max(self.v.norm(), self.w.norm())

    def to(self, basis):
        return Plane22(self.v.to(basis), self.w.to(basis))

    def reparametrize(self, m):
        """Span of ``m[0,0] v + m[0,1] w`` and ``m[1,0] v + m[1,1] w``."""
        m = np.asarray(m, dtype=float)
        return Plane22(m[0, 0] * self.v + m[0, 1] * self.w, m[1, 0] * self.v + m[1, 1] * self.w)
