"""Exception types shared across the package."""


class SimparrError(Exception):
    """Base class for all package errors."""


class UndecidedError(SimparrError):
    """A predicate could not be certified at the precision cap."""


class MaxPrecisionExceeded(SimparrError):
    pass


class IntervalDivisionError(SimparrError, ZeroDivisionError):
    """Division by an interval that contains zero."""


class IdenticalPoints(SimparrError, ValueError):
    pass


class UndecidedEquality(UndecidedError):
    pass


class SingularTransform(SimparrError, ValueError):
    pass


class DuplicateLine(SimparrError, ValueError):
    pass


class UndecidedCoincidence(UndecidedError):
    pass


class NotSimplicial(SimparrError, ValueError):
    pass


class IsNearPencil(SimparrError, ValueError):
    pass


class OracleMismatch(SimparrError):
    """A symbolic coincidence rule disagrees with certified numerics."""


class SingularPointUsed(SimparrError, ValueError):
    pass


class UndecidedSlope(UndecidedError):
    pass


class ConvergenceFailure(SimparrError):
    pass


class RankDeficient(SimparrError, ValueError):
    pass


class ArrangementFileError(SimparrError, ValueError):
    pass
