"""
Exceptions raised by the calculator.

Everything derives from ValueError so callers that only know about bad input
keep working; the command line maps the subclasses to exit codes.
"""


class SWCalcError(ValueError):
    """Base class for every calculator error."""


class LatticeError(SWCalcError):
    """Invalid lattice data or an operation across different lattices."""


class ManifoldError(SWCalcError):
    """Invalid manifold expression or spin^c class."""


class ChamberUndefinedError(SWCalcError):
    """The requested chamber does not exist for the query."""


class PreconditionError(SWCalcError):
    """A families query violates the hypotheses of the engine."""


class CertificateError(SWCalcError):
    """A certificate could not be established or replayed."""


class ParseError(SWCalcError):
    """Syntax error in an expression, with the byte offset of the problem."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class UsageError(SWCalcError):
    """Command line misuse."""
