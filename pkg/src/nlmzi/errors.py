"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation
    (negative probability, non-Hermitian matrix, empty term list, ...)."""


class ConfigurationError(RuntimeError):
    """A run is mis-configured: guard exceeded, truncation insufficient,
    unsupported process variant for the requested engine."""


class FitError(RuntimeError):
    """A least-squares inversion could not be carried out
    (degenerate time grid, singular design matrix)."""
