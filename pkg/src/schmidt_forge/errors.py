"""Exception types shared across the package."""


class StructuralError(ValueError):
    """Raised when data has the wrong shape, length, or layout."""


class DomainError(ValueError):
    """Raised when a value lies outside the mathematical domain of an operation."""


class ToleranceError(DomainError):
    """Raised when a numerically impossible outcome indicates a misconfigured tolerance."""
