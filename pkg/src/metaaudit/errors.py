"""Exception types shared across the package.

Everything raised on bad user input derives from :class:`ValidationError`,
so callers (and the command-line driver) can distinguish "your data or
arguments are wrong" from genuine I/O failures and bugs.
"""

__all__ = [
    "ValidationError",
    "DegenerateIntervalError",
    "EmptySeriesError",
    "InsufficientDataError",
    "SearchSpaceOverflowError",
]


class ValidationError(ValueError):
    """Invalid input data or arguments."""


class DegenerateIntervalError(ValidationError):
    """Confidence interval with zero width; no standard error can be recovered."""


class EmptySeriesError(ValidationError):
    """No records matched the requested selection."""


class InsufficientDataError(ValidationError):
    """Too few observations for the requested statistic."""


class SearchSpaceOverflowError(ValidationError):
    """Computed search space exceeds the supported 64-bit integer range."""
