"""Exception types shared across the package."""


class GolodkitError(Exception):
    """Base class for all errors raised by golodkit."""


class RingMismatchError(GolodkitError):
    """Operands live in different polynomial rings."""


class NotDivisibleError(GolodkitError):
    """Exact division failed; carries a witness term."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonProperElementError(GolodkitError):
    """Element has a nonzero constant term where one in the maximal ideal is required."""


class PreconditionError(GolodkitError):
    """An operation's stated precondition was violated."""


class ResourceLimitError(GolodkitError):
    """A configurable step budget was exhausted."""


class CrossCheckMismatchError(GolodkitError):
    """Two independent decision procedures disagreed; indicates an implementation bug."""


class NonMinimalResolutionError(GolodkitError):
    """A unit entry was found where a minimal resolution is required."""


class DegreeBoundError(GolodkitError):
    """A degreewise computation detected that its internal degree bound is too small."""


class UnsupportedInputError(GolodkitError):
    """Valid input outside the supported scope of the requested operation."""


class ParseError(GolodkitError):
    """Syntax error in an input file, with line/column position."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col
