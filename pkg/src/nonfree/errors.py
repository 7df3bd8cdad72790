"""Exception types raised across the package."""


class NonFreeError(ValueError):
    """Base class for bad input to any computation here."""


class InvariantViolation(RuntimeError):
    """A structural identity that must hold by construction did not."""


class DivisibilityError(InvariantViolation):
    pass


class CertificateFailure(InvariantViolation):
    pass


class ZeroQError(NonFreeError):
    pass


class NotAHalfRelation(NonFreeError):
    pass


class ZeroArgError(NonFreeError):
    pass


class WrongLengthError(NonFreeError):
    pass


class SquareInputError(NonFreeError):
    pass


class DegenerateQuadratic(NonFreeError):
    pass


class ZeroDenominator(NonFreeError):
    pass


class BadParams(NonFreeError):
    pass


class IndexTooSmall(NonFreeError):
    pass


class BadDigit(NonFreeError):
    pass
