"""Exception types raised by the engines.

Every error carries a plain message; callers in the CLI map them to exit
codes (usage errors to 2, internal assertion failures to 1).
"""


class ThetaOrbitError(Exception):
    """Base class for all package errors."""


class UsageError(ThetaOrbitError, ValueError):
    """Invalid parameters supplied by the caller."""


class StableRangeError(UsageError):
    pass


class InvalidDiagram(UsageError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class CapExceeded(UsageError):
    pass


class IndexOutOfRange(UsageError, IndexError):
    pass


class NonDominantWeight(UsageError):
    pass


class NonPositiveKappa(UsageError):
    pass


class NotHomogeneous(UsageError):
    pass


class ShapeMismatch(UsageError):
    pass


class NotInNullCone(UsageError):
    pass


class NotNilpotent(UsageError):
    pass


class NotStabilized(UsageError):
    """Too few Hilbert coefficients to read off the top difference."""


# The following signal a bug in the engine rather than bad input.

class InternalError(ThetaOrbitError, AssertionError):
    pass


class LiftInfeasible(InternalError):
    pass


class GradingParityViolation(InternalError):
    pass


class DegenerateSample(InternalError):
    pass
