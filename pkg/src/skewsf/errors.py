"""Exception types shared across the package."""


class SkewsfError(Exception):
    """Base class for all package errors."""


class PreconditionError(SkewsfError):
    """A mathematical precondition was violated (CLI exit code 2)."""


class SizeBoundError(SkewsfError):
    """An exhaustive operation exceeded its configured size bound (CLI exit code 3)."""


class StructuralError(SkewsfError):
    """A structural identity that must hold failed; indicates a bug or bad input."""


class RingMismatchError(PreconditionError):
    """Operands live in different rings."""


class ParseError(PreconditionError):
    """Malformed polynomial or element text."""
