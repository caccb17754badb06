"""Exception hierarchy shared by every module."""


class RedundAllocError(Exception):
    """Base class for all package errors."""


class ValidationError(RedundAllocError, ValueError):
    """Invalid input. ``path`` locates the offending field in a spec file."""

    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


# structure
class MissingEntry(ValidationError):
    pass


class NonMonotone(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class InvalidK(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


class BadIndex(ValidationError):
    pass


# marginals / copulas
class NegativeTime(ValidationError):
    pass


class BadParameter(ValidationError):
    pass


class BoundaryArgument(ValidationError):
    pass


class WrongCopula(ValidationError):
    pass


# costs / optimizer
class Infeasible(ValidationError):
    pass


class EmptyGrid(ValidationError):
    pass


class NumericalError(RedundAllocError, ArithmeticError):
    """Base class for failures of the numerical machinery."""


class QuadratureFailure(NumericalError):
    pass


class DivergenceSuspected(QuadratureFailure):
    pass


class DivergentIntegral(NumericalError):
    pass


class DegenerateMTTF(NumericalError):
    pass


class DegenerateDenominator(NumericalError):
    pass


class ZeroSurvival(NumericalError):
    pass


class ZeroFailureProbability(NumericalError):
    pass


class BracketError(NumericalError):
    pass


class ParseError(RedundAllocError):
    pass
