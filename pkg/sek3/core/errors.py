"""Exception hierarchy shared by every sek3 module."""


class Sek3Error(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(Sek3Error, ValueError):
    pass


class NotSkewError(Sek3Error, ValueError):
    pass


class MalformedAlgebraError(Sek3Error, ValueError):
    pass


class MalformedElementError(Sek3Error, ValueError):
    pass


class MalformedAdjointError(Sek3Error, ValueError):
    pass


class UnsupportedOrderError(Sek3Error, ValueError):
    pass


class InvalidBoxError(Sek3Error, ValueError):
    pass


class FrameMismatchError(Sek3Error, ValueError):
    pass


class NotPSDError(Sek3Error, ValueError):
    pass


class SingularJacobianError(Sek3Error, ArithmeticError):
    pass


class RankDeficientError(Sek3Error, ArithmeticError):
    def __init__(self, message: str, condition: float | None = None):
        super().__init__(message)
        self.condition = condition


class NonDecreasingCostError(Sek3Error, ArithmeticError):
    pass


class NotConcentratedError(Sek3Error, ArithmeticError):
    pass


class LogBranchError(Sek3Error, ArithmeticError):
    pass


def check_same_k(*ks: int, what: str = "operands") -> int:
    """Return the common K of ``ks`` or raise DimensionMismatchError."""
    first = ks[0]
    for k in ks[1:]:
        if k != first:
            raise DimensionMismatchError(f"{what} have different K: {list(ks)}")
    return first
