"""Exception hierarchy shared across the package."""


class OosPredError(Exception):
    """Base class for all package errors."""


class ConfigurationError(OosPredError, ValueError):
    """Invalid tuning parameter, window split, or experiment setup."""


class DataError(OosPredError, ValueError):
    """Input data violates a contract (missing, non-finite, malformed)."""


class FormatError(DataError):
    """A file does not match the expected on-disk layout."""


class DegenerateVarianceError(OosPredError, ArithmeticError):
    """A long-run variance normalizer came out as zero."""
