"""Numerical checks for neutral Kaehler 4-manifolds.

Modules: ``linalg`` (vectors, 2-forms, bases), ``flat`` (R^{2,2}),
``tn`` (tangent bundles of surfaces), ``geodesics`` (oriented lines of E^3
and geodesics of H^3), ``curvature`` (finite-difference Riemann and Weyl),
``verify``/``cli`` (check suites and the ``nk`` command).
"""

from .config import RunConfig
from .errors import (
    AntiDiagonalError,
    BasisMismatchError,
    DegenerateCurveError,
    DegenerateMetricError,
    DomainError,
    ImmersionError,
    NKError,
    RankDeficientError,
    UnknownBasisError,
)
from .flat import DualityClass, hodge_star, plane_duality_class, sd_asd_decompose
from .linalg import COORDINATE, DOUBLE_NULL, Covec4, Form2, Plane22, Vec4, wedge

__version__ = "0.1.0"

__all__ = [
    "AntiDiagonalError",
    "BasisMismatchError",
    "COORDINATE",
    "Covec4",
    "DOUBLE_NULL",
    "DegenerateCurveError",
    "DegenerateMetricError",
    "DomainError",
    "DualityClass",
    "Form2",
    "ImmersionError",
    "NKError",
    "Plane22",
    "RankDeficientError",
    "RunConfig",
    "UnknownBasisError",
    "Vec4",
    "hodge_star",
    "plane_duality_class",
    "sd_asd_decompose",
    "wedge",
]
