"""Shared exception and warning types."""


class ResolutionError(ValueError):
    """A truncation degree or quadrature rule cannot resolve the requested object."""


class AccuracyWarning(UserWarning):
    """A result was computed but its accuracy contract is degraded."""
