"""Hypersurface geometry in Euclidean space.

Level-set densities and the extended shape operator, parametric charts for
the built-in closed surfaces, tube volumes with their curvature-integral
coefficients, and Monte Carlo cross-checks against exact geometry.
"""

from .mpoly import MultiPoly
from .levelset import (
    IdentityViolationError,
    LevelSetSurface,
    ProjectionError,
    ShapeData,
    SingularPointError,
)
from .parametric import (
    DegenerateMetricError,
    ParametricSurface,
    flat_chart,
    sphere,
    surface_from_json,
    torus,
    tube_jacobian,
    weingarten_parametric,
)
from .tube import (
    FocalBoundWarning,
    QuadratureError,
    TubePolynomial,
    WeightedIntegralResult,
    half_tube_volume,
    monte_carlo_tube_volume,
    surface_quadrature,
    weighted_integral,
    weyl_coefficients,
)

__all__ = [
    "MultiPoly",
    "LevelSetSurface",
    "ShapeData",
    "SingularPointError",
    "ProjectionError",
    "IdentityViolationError",
    "ParametricSurface",
    "DegenerateMetricError",
    "surface_from_json",
    "sphere",
    "torus",
    "flat_chart",
    "weingarten_parametric",
    "tube_jacobian",
    "TubePolynomial",
    "FocalBoundWarning",
    "QuadratureError",
    "WeightedIntegralResult",
    "half_tube_volume",
    "weyl_coefficients",
    "weighted_integral",
    "monte_carlo_tube_volume",
    "surface_quadrature",
]
