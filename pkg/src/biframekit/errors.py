"""Exception types shared across the toolkit.

Everything numerical in this package reports contract violations through
subclasses of :class:`BiframeError`, so callers can catch one base class at
API boundaries (the CLI does exactly that).
"""

from __future__ import annotations


class BiframeError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatchError(BiframeError):
    """Operands live on spaces of incompatible dimension."""


class FieldMismatchError(BiframeError):
    """Real and complex data were mixed within one system."""


class NotHermitianError(BiframeError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class NotPSDError(BiframeError):
    """A matrix required to be positive semidefinite has a negative direction."""


class SingularOperatorError(BiframeError):
    """An operator required to be invertible is singular at working precision."""


class SingularFrameOperatorError(SingularOperatorError):
    """The frame operator of a system is not positive definite, so it cannot
    be inverted for dual constructions."""


class ConvergenceError(BiframeError):
    """An iterative routine exhausted its iteration budget."""


class InvalidIntervalError(BiframeError):
    """Quadrature was requested on an empty or reversed interval."""


class InvalidMassError(BiframeError):
    """A measure node carries a non-positive or non-finite weight."""


class MalformedBoundsError(BiframeError):
    """A claimed bound pair violates 0 < lower <= upper."""


class NotABiframeError(BiframeError):
    """The input system is not a valid biframe for the required target."""


class ZeroOperatorError(BiframeError):
    """A construction received the zero operator where a nonzero one is needed."""


class NotCommutingError(BiframeError):
    """Two operators required to commute do not, beyond tolerance."""


class RangeNotContainedError(BiframeError):
    """A range-inclusion precondition failed at the working rank tolerance."""


class NotTightError(BiframeError):
    """A system claimed to be tight is not tight at the given constant."""


class UnknownFixtureError(BiframeError):
    """An unrecognised fixture name was requested."""


class ManifestError(BiframeError):
    """Base class for manifest I/O problems."""


class ManifestParseError(ManifestError):
    """The manifest file is not syntactically valid JSON.

    Carries ``line`` and ``column`` attributes when the underlying decoder
    provides a position.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class ManifestValidationError(ManifestError):
    """The manifest is well-formed JSON but violates the schema; the message
    names the offending field."""
