"""Exception types raised by the estimators.

Every error derives from :class:`MonoidxError` (itself a ``ValueError``) so
callers can catch the whole family at once. The CLI reports the class name.
"""


class MonoidxError(ValueError):
    """Base class for data and estimation errors."""


class InvalidSeries(MonoidxError):
    """Sample locations or values violate the series invariants."""


class DegenerateSeries(MonoidxError):
    """Total variation is zero, so the index of increase is undefined."""


class UnknownFunction(MonoidxError):
    pass


class InvalidAlpha(MonoidxError):
    pass


class InvalidGamma(MonoidxError):
    pass


class InvalidGroupSize(MonoidxError):
    pass


class PlanMismatch(MonoidxError):
    pass


class InvalidBandwidth(MonoidxError):
    pass


class TooFewPoints(MonoidxError):
    pass


class ResampleExhausted(MonoidxError):
    """Too many bootstrap replicates stayed degenerate after redraws."""


class InsufficientTrace(MonoidxError):
    """A convergence trace has too few usable points to fit a slope."""
