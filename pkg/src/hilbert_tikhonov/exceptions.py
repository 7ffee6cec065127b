"""Exception types raised across the package."""


class InvalidInputError(ValueError):
    """Raised for non-finite, mis-shaped or out-of-range arguments."""


class ConfigurationError(ValueError):
    """Raised when constants violate a structural requirement (e.g. ``c * ||G|| >= 1``)."""


class ConstructionError(RuntimeError):
    """Raised when a test problem fails its own consistency checks."""


class LagrangeSolveError(RuntimeError):
    """Raised when the ball-constrained multiplier search does not converge."""


class SearchFailure(RuntimeError):
    """Raised when the sequential discrepancy search exhausts its step budget.

    The evaluated grid points are kept on ``trace``.
    """

    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace
