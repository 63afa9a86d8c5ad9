"""Exception hierarchy shared by all nsiep modules."""

from __future__ import annotations


class NiepError(Exception):
    """Base class for every error raised by this package."""


# spectrum input / conditions
class EmptyInput(NiepError, ValueError):
    pass


class NonFiniteEntry(NiepError, ValueError):
    pass


class CheckInconclusive(NiepError, ArithmeticError):
    """A moment or power overflowed, so the inequality cannot be decided."""


# realizability
class NotRealizable(NiepError):
    """The requested list cannot be produced by the construction."""


class NotRealizablePair(NotRealizable):
    pass


class NotRealizableStep(NotRealizable):
    """Raised when a negative eigenvalue exceeds the current corner entry."""

    def __init__(self, index: int, corner: float, value: float):
        self.index = index
        self.corner = corner
        self.value = value
        super().__init__(
            f"step {index}: corner {corner!r} + eigenvalue {value!r} < 0 "
            "(largest eigenvalue plus the sum of the negative eigenvalues is negative)"
        )


class NegativeScalar(NotRealizable):
    pass


class NotDominant(NotRealizable):
    pass


class NonPositiveLeading(NotRealizable):
    pass


# 2x2 blocks and merging
class ParamOutOfRange(NiepError, ValueError):
    pass


class PerronMismatch(NiepError, ValueError):
    pass


class ModeMismatch(NiepError, ValueError):
    pass


# stochastic pipeline
class PerronOrderViolated(NiepError):
    pass


class NotConverged(NiepError, ArithmeticError):
    pass


class NotPositive(NiepError):
    """Perron vector has a (numerically) zero entry; the matrix is reducible."""


class BadEigenpair(NiepError, ValueError):
    pass


class IrreducibilityLost(NiepError):
    pass


class InternalNonnegativityViolation(NiepError, AssertionError):
    pass


# verification
class NotSymmetric(NiepError, ValueError):
    pass


class SingularFactorization(NiepError, ArithmeticError):
    pass


class DimensionMismatch(NiepError, ValueError):
    pass


class ParseError(NiepError, ValueError):
    pass
