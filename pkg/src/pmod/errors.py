"""Exception hierarchy shared by every module of the package."""


class PmodError(Exception):
    """Base class for all errors raised by pmod."""


class DimensionError(PmodError, ValueError):
    """Points or sets of different ambient dimensions were mixed."""


class CoordinateOverflow(PmodError, OverflowError):
    """A coordinate left the signed 64-bit range."""


class InvalidIntervalError(PmodError, ValueError):
    """A point set failed poset-convexity or poset-connectivity."""


class MultiComponentError(PmodError):
    """An intersection split into several interval components where at most one is allowed."""

    def __init__(self, message, n_components=None):
        super().__init__(message)
        self.n_components = n_components


class OracleBudgetExceeded(PmodError):
    """The exhaustive interleaving oracle would need more unknowns than its budget."""

    def __init__(self, needed, budget):
        super().__init__(f"oracle needs {needed} scalar unknowns, budget is {budget}")
        self.needed = needed
        self.budget = budget
