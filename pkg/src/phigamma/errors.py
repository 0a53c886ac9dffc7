# Exception types shared across the package.


class PhiGammaError(Exception):
    """Base class for all arithmetic and configuration errors."""


class WindowUnderflow(PhiGammaError):
    """An operation left no certified coefficients inside the reference window."""


class NotAUnit(PhiGammaError):
    """Inversion was requested for a series that is not invertible."""


class PrecisionTooLow(PhiGammaError):
    """The working precision cannot support the requested operation."""


class NotEtale(PhiGammaError):
    """The Frobenius matrix of a module is not invertible."""


class RankMismatch(PhiGammaError):
    """Operands live in modules of incompatible rank or shape."""


class NegativeTailResidual(PhiGammaError):
    """Evaluation at X = 0 hit a series with nonzero negative part."""


class LimitNotStabilized(PhiGammaError):
    """A level-indexed limit failed to stabilize below the level cap."""


class CocycleDivergence(PhiGammaError):
    """The off-diagonal cocycle iteration failed to stabilize."""


class NotPsiZero(PhiGammaError):
    """An element claimed to be killed by psi is not, within the window."""


class NotPsiOne(PhiGammaError):
    """An element claimed to be fixed by psi is not, within the window."""


class DegreeOverflow(PhiGammaError):
    """A cochain operation left the degree range of the complex."""


class UnknownSuite(PhiGammaError):
    """The requested check suite name is not registered."""


class ConfigInvalid(PhiGammaError):
    """A run configuration failed validation."""


class ParseError(PhiGammaError):
    """A serialized object could not be decoded."""


class ValidationError(PhiGammaError):
    """A decoded object failed its semantic checks."""
