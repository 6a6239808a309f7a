"""Exception hierarchy shared by every module in the package."""


class ResistanceError(Exception):
    """Base class for all package errors."""


class InvalidGraphError(ResistanceError, ValueError):
    pass


class NotConnectedError(ResistanceError):
    """The graph has no globally reachable node."""


class InvalidSizeError(ResistanceError, ValueError):
    pass


class DimensionMismatchError(ResistanceError, ValueError):
    pass


class SingularSystemError(ResistanceError, ArithmeticError):
    """The Lyapunov system has no unique solution (or is numerically singular)."""


class MalformedInputError(ResistanceError, ValueError):
    pass


class NodeIndexError(ResistanceError, IndexError):
    pass


class NonpositiveWeightError(ResistanceError, ValueError):
    pass


class EmptyPathError(ResistanceError, ValueError):
    pass


class InvalidParamError(ResistanceError, ValueError):
    pass


class ClosedFormMismatchError(ResistanceError, ArithmeticError):
    pass


class MissingPriorError(ResistanceError, KeyError):
    pass


class OutOfValidityRangeError(ResistanceError, ValueError):
    pass


class EdgeListParseError(ResistanceError, ValueError):
    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
