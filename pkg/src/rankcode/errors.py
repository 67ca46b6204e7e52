"""Exception types raised across the package."""


class RankCodeError(Exception):
    """Base class for all errors raised by rankcode."""


class MalformedInput(RankCodeError, ValueError):
    """Text input (field spec, element, polynomial, word file) could not be parsed."""


class DivisionByZero(RankCodeError, ZeroDivisionError):
    pass


class SingularMatrix(RankCodeError, ArithmeticError):
    pass


class InvalidRank(RankCodeError, ValueError):
    pass


class CoefficientOutOfRange(RankCodeError, ValueError):
    pass


class KernelDimMismatch(RankCodeError, ArithmeticError):
    def __init__(self, dim, expected=2):
        super().__init__(f"kernel dimension {dim}, expected {expected}")
        self.dim = dim
        self.expected = expected


class DegenerateLeadingCoefficient(RankCodeError, ArithmeticError):
    pass


class TooLarge(RankCodeError, ValueError):
    pass


class DecodeFailure(RankCodeError):
    """The received word is not within the unique decoding radius of any codeword.

    ``outcome`` carries the best partial result (``ok`` is False) when one exists.
    """

    def __init__(self, message, outcome=None):
        super().__init__(message)
        self.outcome = outcome
