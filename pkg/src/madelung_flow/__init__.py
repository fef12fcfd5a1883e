"""Self-similar Madelung/Gross-Pitaevskii shape functions, diagnostics and oracles."""

from .errors import ConfigError, DomainError, NumericalError, RangeError, SingularityError
from .similarity import (
    LinearShapeConstants,
    PhysParams,
    SimilarityExponents,
    exponents_from_alpha,
    fit_constants,
    linear_density_shape,
)
from .madelung import ShapeTable, solve_density

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DomainError",
    "LinearShapeConstants",
    "NumericalError",
    "PhysParams",
    "RangeError",
    "ShapeTable",
    "SimilarityExponents",
    "SingularityError",
    "exponents_from_alpha",
    "fit_constants",
    "linear_density_shape",
    "solve_density",
]
