"""
Exception hierarchy for decimcorr.

Parameter and precondition problems derive from ValueError, broken internal
consistency derives from RuntimeError. Each class carries the CLI exit code
it maps to.
"""


class DecimcorrError(Exception):
    exit_code: int = 1


class ParameterError(DecimcorrError, ValueError):
    exit_code = 2


class ConsistencyError(DecimcorrError, RuntimeError):
    exit_code = 1


# field construction / arithmetic

class DegreeTooLarge(ParameterError):
    pass


class NonPrimitiveModulus(ParameterError):
    pass


class ElementOutOfRange(ParameterError):
    pass


class FieldDivisionByZero(ParameterError, ZeroDivisionError):
    pass


class NotInSubfield(ParameterError):
    pass


class BadTower(ParameterError):
    pass


class DlogOfZero(ParameterError):
    pass


class ZeroInput(ParameterError):
    pass


class FieldWithoutCubicStructure(ParameterError):
    pass


class NotCoprime(ParameterError):
    pass


class FieldMismatch(ParameterError):
    pass


# sequence parameters / sweeps

class BadParameters(ParameterError):
    pass


class BadK(ParameterError):
    pass


class BadH(ParameterError):
    pass


class CubeInput(ParameterError):
    pass


class ShiftOutOfRange(ParameterError):
    pass


class TooLargeForExhaustive(DecimcorrError):
    """Resource guard: the requested exhaustive sweep exceeds the size ceiling."""
    exit_code = 3


class InvariantFailure(ConsistencyError):
    pass


class UnexpectedDimension(ConsistencyError):
    pass


class PredictionMismatch(ConsistencyError):
    pass
