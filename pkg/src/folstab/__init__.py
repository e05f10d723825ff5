"""Exact analyzer for germs of singular holomorphic foliations in the
plane: blow-up reduction, reduced-point classification, holonomy germ
groups, and the first-integral / logarithmic stability dichotomy.
"""

from .errors import (
    AmbiguousKernel,
    Dicritical,
    DivisionByZero,
    FolstabError,
    JetOrderInsufficient,
    MaxBlowupsExceeded,
    MixedModeComposition,
    NonRepresentablePoint,
    NotSingular,
    ParseError,
    SaddleNodeIndexUnsupported,
    ZeroDeterminant,
)
from .field import KElement, check_field_parameter, frac_sqrt

__all__ = [
    "AmbiguousKernel",
    "Dicritical",
    "DivisionByZero",
    "FolstabError",
    "JetOrderInsufficient",
    "KElement",
    "MaxBlowupsExceeded",
    "MixedModeComposition",
    "NonRepresentablePoint",
    "NotSingular",
    "ParseError",
    "SaddleNodeIndexUnsupported",
    "ZeroDeterminant",
    "check_field_parameter",
    "frac_sqrt",
]
