"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain (poles, t <= 0, f <= 0, ...)."""


class RangeError(ValueError):
    """Argument outside the supported/tabulated range."""


class SingularityError(ArithmeticError):
    """A right-hand side hit a singular point (e.g. division by a vanishing density)."""


class NumericalError(RuntimeError):
    """A numerical procedure failed (step underflow, non-convergence)."""


class ConfigError(ValueError):
    """Invalid run configuration."""
