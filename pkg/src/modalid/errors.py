"""Exception types shared across the toolkit."""


class ModalidError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ModalidError, ValueError):
    """An argument violates an operation's preconditions."""


class EmptyCoefficientsError(ValidationError):
    """A coefficient list is empty."""


class InvalidLengthError(ValidationError):
    """Backbone length is not strictly positive."""


class InvalidScaleError(ValidationError):
    """Scale factor is not strictly positive."""


class TooFewSamplesError(ValidationError):
    """Fewer than two arclength samples requested."""


class DivisionTooFineError(ValidationError):
    """More divisions requested than the sample grid can resolve."""


class DegenerateTipError(ValidationError):
    """The last two backbone samples coincide; no tip tangent exists."""


class NonOrthonormalInputError(ValidationError):
    """A rotation matrix is not orthonormal with determinant +1."""


class LengthMismatchError(ValidationError):
    """Two point lists that must correspond have different lengths."""


class NonUnitInputError(ValidationError):
    """A vector that must be unit-norm is not."""


class InvalidConfigError(ValidationError):
    """An evolutionary-search configuration field is out of range."""


class UnevaluatedIndividualError(ModalidError):
    """An individual without fitness reached a fitness-dependent operation."""


class ParseError(ModalidError):
    """A file could not be parsed at all (bad syntax or encoding)."""


class SchemaError(ModalidError):
    """A parsed document has missing, extra-typed, or miscounted fields."""
