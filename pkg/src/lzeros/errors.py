"""Exception types shared across the package.

Kept deliberately small: configuration errors (bad parameters, violated
preconditions), accuracy-envelope violations, quadrature failures, and
cache problems. Everything else raises the usual ValueError/TypeError.
"""


class ConfigurationError(ValueError):
    """A parameter violates a documented precondition."""


class AccuracyError(ArithmeticError):
    """A requested evaluation lies outside the engineered accuracy envelope."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to converge to the requested tolerance."""


class CacheMissError(KeyError):
    """A zero-cache record is absent or does not cover the requested range."""


class CacheCorruptError(RuntimeError):
    """A zero-cache file exists but cannot be parsed or fails validation."""


class IncompleteCacheError(RuntimeError):
    """A statistic was requested from a cache lacking required (q, chi) records."""
