"""Finite-precision arithmetic laboratory for etale (phi, Gamma)-modules
over the p-adic Laurent-series ring, with the limit operators, pairings,
and complexes needed to check their algebraic identities at desk scale.
"""

from .errors import (
    CocycleDivergence,
    ConfigInvalid,
    DegreeOverflow,
    LimitNotStabilized,
    NegativeTailResidual,
    NotAUnit,
    NotEtale,
    NotPsiOne,
    NotPsiZero,
    ParseError,
    PhiGammaError,
    PrecisionTooLow,
    RankMismatch,
    UnknownSuite,
    ValidationError,
    WindowUnderflow,
)
from .laurent import LaurentElement, Precision

__all__ = [
    "CocycleDivergence",
    "ConfigInvalid",
    "DegreeOverflow",
    "LaurentElement",
    "LimitNotStabilized",
    "NegativeTailResidual",
    "NotAUnit",
    "NotEtale",
    "NotPsiOne",
    "NotPsiZero",
    "ParseError",
    "PhiGammaError",
    "Precision",
    "PrecisionTooLow",
    "RankMismatch",
    "UnknownSuite",
    "ValidationError",
    "WindowUnderflow",
]
