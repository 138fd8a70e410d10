"""Exception hierarchy shared by all ergokit modules."""


class ErgokitError(Exception):
    """Base class for every error raised by ergokit."""


class ValidationError(ErgokitError, ValueError):
    """Input data does not describe a valid object (matrix, spectrum, ...)."""


class NotSquare(ValidationError):
    pass


class NotHermitian(ValidationError):
    pass


class NotPositive(ValidationError):
    pass


class TraceError(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class SpectrumError(ValidationError):
    pass


class NormalizationError(ValidationError):
    pass


class SchmidtRankTooLarge(ValidationError):
    pass


class RangeError(ValidationError):
    pass


class InvalidSpacing(ValidationError):
    pass


class EigensolverFailure(ErgokitError, ArithmeticError):
    pass


class CaseMismatch(ErgokitError, ValueError):
    """An integer-constraint solver was called outside the regime it covers."""


class UnsupportedHamiltonian(ErgokitError, ValueError):
    """The separability bound needs identical linear ladders on both sides."""


class NonLinearHamiltonian(UnsupportedHamiltonian):
    pass


class UnequalSpacing(UnsupportedHamiltonian):
    pass


class UnsupportedDimension(ErgokitError, ValueError):
    pass


class NotNormalizedError(ValidationError):
    pass
