"""Exception hierarchy.

Every error raised by the library derives from :class:`ExpSeriesError`.
Input-shape problems derive from :class:`ValidationError`; numerical
non-certification derives from :class:`NotCertifiedError`.  The CLI maps the
two groups to distinct exit codes.
"""


class ExpSeriesError(Exception):
    """Base class for library errors."""


class ValidationError(ExpSeriesError, ValueError):
    """Input violates a documented invariant."""


class NotCertifiedError(ExpSeriesError):
    """A numerical procedure could not certify its result."""


class InvalidDomain(ValidationError):
    pass


class PointNotOnBoundary(ValidationError):
    pass


class EmptyDirectionSet(ValidationError):
    pass


class NoTail(ValidationError):
    pass


class ZeroArgument(ValidationError):
    pass


class NonPositiveRealPart(ValidationError):
    pass


class NoExponentsInAngle(ValidationError):
    pass


class TruncationTooSmall(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class NonNegativeTopFrequency(ValidationError):
    pass


class SizeMismatch(ValidationError):
    pass


class UnsupportedCoeffModel(ValidationError):
    pass


class LimitPointNotOnBoundary(ValidationError):
    pass


class NodesOutsideDomain(ValidationError):
    pass


class EmptyRealSection(ValidationError):
    pass


class NotNested(ValidationError):
    pass


class NearSingular(NotCertifiedError):
    """Scaled pivot fell below tolerance during elimination."""

    def __init__(self, message, condition=float("inf")):
        super().__init__(message)
        self.condition = condition
