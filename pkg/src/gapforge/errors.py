"""Exception types shared across the package."""


class GapforgeError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(GapforgeError):
    """A field characteristic was not a prime number."""


class DegreeZero(GapforgeError):
    """An extension degree below 1 was requested."""


class FieldMismatch(GapforgeError):
    """Operands belong to different fields."""


class DivisionByZero(GapforgeError, ZeroDivisionError):
    """Division or inversion of the zero element."""


class DimensionMismatch(GapforgeError):
    """Matrix or vector dimensions are not conformable."""


class SizeCap(GapforgeError):
    """A constructed object would exceed the configured size limit."""


class EnumerationCapExceeded(GapforgeError):
    """An exhaustive enumeration would exceed the configured cap."""


class DegreeTooLarge(GapforgeError):
    """Reed-Solomon dimension exceeds the number of evaluation points."""


class GapClosed(GapforgeError):
    """The requested reduction would carry no sound completeness/soundness gap."""


class EmptySlice(GapforgeError):
    """The distinguished coordinate vanishes on the whole subspace."""


class ArityMismatch(GapforgeError):
    """A circuit was evaluated on the wrong number of input bits."""


class ParseError(GapforgeError):
    """Malformed textual input.

    Carries the 1-based line number when known.
    """

    def __init__(self, reason: str, line: int | None = None):
        self.reason = reason
        self.line = line
        if line is None:
            super().__init__(reason)
        else:
            super().__init__(f"line {line}: {reason}")


class ForwardReference(ParseError):
    """A gate references a name that is not defined earlier."""


class NoOutput(ParseError):
    """The circuit text designates no output gate."""


class DuplicateName(ParseError):
    """A gate name is defined twice."""
