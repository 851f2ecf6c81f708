"""Exceptions shared across the package."""


class ZzqecError(Exception):
    """Base class for package errors."""


class DepthUnsupported(ZzqecError):
    """Requested concatenation depth cannot be materialized."""


class ScaleExceeded(ZzqecError):
    """Requested engine/layout combination is beyond its supported scale."""


class NotClassifiable(ZzqecError):
    """A corrected Z-error pattern did not act as a scalar on the codewords."""


class NonPositiveDistance(ZzqecError):
    """Physical distance must be strictly positive."""
