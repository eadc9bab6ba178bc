"""Exception hierarchy for the whole package.

Every failure that reflects bad input or an unsatisfiable request raises a
subclass of :class:`CliffexError`, so callers (and the CLI) can catch one
type.  ``InternalInconsistency`` is different: it signals that a redundant
self-check inside the library failed, which is a bug, not a user error.
"""


class CliffexError(Exception):
    """Base class for all domain errors raised by this package."""


class EvenCharacteristic(CliffexError):
    """Characteristic 2 was requested; every construction here needs 1/2."""


class NonPrimeModulus(CliffexError):
    """A composite or unit modulus was given for a prime field."""


class MixedFieldSpec(CliffexError):
    """Operands belong to different coefficient fields."""


class InversionOfZero(CliffexError):
    """Division by the zero element of a field."""


class UnorderedField(CliffexError):
    """A sign or ordering query was made over a finite field."""


class ParseError(CliffexError):
    """Malformed text for a scalar, blade, multivector, or form literal."""


class IndexOutOfRange(CliffexError):
    """A generator index outside 1..n appeared in a blade."""


class MismatchedForm(CliffexError):
    """Operands live over different quadratic forms, or a blade mask does
    not fit the form's dimension."""


class DegenerateForm(CliffexError):
    """A diagonal entry of a quadratic form is zero."""


class CapExceeded(CliffexError):
    """The requested dimension is beyond the supported or configured cap."""


class ZeroElement(CliffexError):
    """The zero multivector was passed where a nonzero one is required."""


class NotInvertible(CliffexError):
    """Inverse requested for an element with a singular translation."""


class NotEquivalent(CliffexError):
    """The given linear map does not pull one form back to the other."""


class SingularTransformation(CliffexError):
    """A basis-change matrix is singular."""


class SingularBasis(CliffexError):
    """Vectors passed as a basis are linearly dependent."""


class OddDimension(CliffexError):
    """An even-dimension-only identity was requested in odd dimension."""


class NotInLieAlgebra(CliffexError):
    """An element outside the isometry Lie algebra was passed to an
    operation defined only there."""


class NotInvariantSubspace(CliffexError):
    """The adjoint action leaves the given spanning set's span."""


class NotDefiniteForm(CliffexError):
    """A definiteness computation needs a positive definite form."""


class WrongForm(CliffexError):
    """An operation is defined only for one specific quadratic form."""


class DimensionMismatch(CliffexError):
    """Matrix or vector sizes are incompatible."""


class InternalInconsistency(CliffexError):
    """A redundant internal cross-check failed; indicates a library bug."""
