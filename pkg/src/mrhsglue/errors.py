"""Exception hierarchy.

Every error raised for bad input derives from :class:`MrhsError` (itself a
``ValueError``), which the command-line front end maps to exit code 2.
"""


class MrhsError(ValueError):
    pass


class ZeroInverse(MrhsError, ZeroDivisionError):
    pass


class NotPrime(MrhsError):
    pass


class DimensionMismatch(MrhsError):
    pass


class Inconsistent(MrhsError):
    pass


class RankDeficient(MrhsError):
    pass


class EnumerationTooLarge(MrhsError):
    pass


class ModelTooLarge(MrhsError):
    pass


class InvalidPermutation(MrhsError):
    pass


class TooManySets(MrhsError):
    pass


class FieldTooSmall(MrhsError):
    pass


class InfeasibleParameters(MrhsError):
    pass


class ConstructionStalled(MrhsError):
    pass


class InvalidPrefix(MrhsError):
    pass


class ParseError(MrhsError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
