class NengthError(Exception):
    """
    Base class for every failure raised by the nength search library.

    Each subclass carries the CLI exit code it maps to:

     - 2 malformed input, shape or support problems
     - 3 alphabet / character code problems
     - 4 floating-point precision failures
     - 5 verification mismatches
    """

    exit_code = 2


class DimensionError(NengthError, ValueError):
    pass


class InputFormatError(NengthError):
    pass


class ShapeMismatchError(NengthError, ValueError):
    pass


class InvalidSupportError(NengthError, ValueError):
    pass


class UnsupportedModeError(NengthError):
    pass


class CapacityError(NengthError):
    pass


class LabSizeError(NengthError):
    pass


class AlphabetError(NengthError, ValueError):
    exit_code = 3


class PrecisionError(NengthError, ArithmeticError):
    exit_code = 4


class DecodeError(PrecisionError):
    pass


class SearchProductOverflowError(NengthError, OverflowError):
    exit_code = 4


class VerificationError(NengthError):
    exit_code = 5
