"""Exception types shared across the package."""


class TailOrderError(Exception):
    """Base class for all package-specific errors."""


class InfiniteMoment(TailOrderError):
    """Raised when a requested raw or residual moment diverges."""


class TailUnderflow(TailOrderError):
    """Raised when a tail value underflows past the evaluable horizon."""


class ResidualUncertainty(TailOrderError):
    """Root isolation could not separate two candidate roots at working
    precision.  Never silently resolved: callers must degrade the result
    to an inconclusive grade."""


class IndeterminateFunction(TailOrderError):
    """Every sample of a scanned function fell inside the deadband, i.e.
    the function is numerically zero on the scan window."""


class UnknownCase(TailOrderError):
    """Requested casebook id is not registered."""


class ClassifierDisagreement(TailOrderError):
    """An analytic criterion and the numeric classifier disagree; surfaced
    instead of being resolved silently."""
