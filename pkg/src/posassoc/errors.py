"""Exception hierarchy shared by every module."""


class PosAssocError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(PosAssocError, ValueError):
    pass


class DimensionOutOfRange(PosAssocError, ValueError):
    pass


class NotAntichain(PosAssocError, ValueError):
    pass


class NotIncreasing(PosAssocError, ValueError):
    pass


class EmptyEventError(PosAssocError, ValueError):
    pass


class InvalidMeasure(PosAssocError, ValueError):
    pass


class ZeroProbabilityCondition(PosAssocError, ValueError):
    pass


class DegenerateParameter(PosAssocError, ValueError):
    pass


class NotFkg(PosAssocError, ValueError):
    """Raised when a measure fails the positive lattice condition.

    The offending pair is kept on ``violation``.
    """

    def __init__(self, violation):
        super().__init__(
            f"measure violates the lattice condition at points "
            f"{violation.a:b}, {violation.b:b}: {violation.lhs} > {violation.rhs}"
        )
        self.violation = violation


class MonotoneCompletionFailed(PosAssocError, ValueError):
    pass


class TooManyUnderlying(PosAssocError, ValueError):
    pass


class ParseError(PosAssocError, ValueError):
    pass
