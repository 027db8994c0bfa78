class HomFinslerError(Exception):
    """Base class for library errors."""


class ModelError(HomFinslerError, ValueError):
    """Malformed or inconsistent Lie-algebra model."""


class DomainError(HomFinslerError, ValueError):
    """Input outside the domain of a formula (y = 0, b >= 1, invalid metric, ...)."""


class SingularContextError(DomainError):
    """A denominator of the curvature quantities vanished."""
