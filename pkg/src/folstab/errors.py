"""Structured failures shared across the analyzer.

Every condition that a caller is expected to branch on gets its own
class; generic programming errors stay ValueError/TypeError.
"""

from __future__ import annotations


class FolstabError(Exception):
    """Base class for all structured analyzer failures."""


class DivisionByZero(FolstabError):
    """Inverse or quotient of zero in an exact field or ring."""


class ZeroDeterminant(FolstabError):
    """A linear change of coordinates was given a singular matrix."""


class NotSingular(FolstabError):
    """The form does not vanish at the origin after saturation."""

    # The analyzer only treats singular germs: A(0,0) = B(0,0) = 0.


class NonRepresentablePoint(FolstabError):
    """A required algebraic point does not live in the working field.

    `factors` lists the offending irreducible factors as strings.
    """

    def __init__(self, message: str, factors: list[str] | None = None):
        super().__init__(message)
        self.factors = factors or []


class Dicritical(FolstabError):
    """A blow-up produced a non-invariant exceptional divisor."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class MaxBlowupsExceeded(FolstabError):
    """The reduction loop hit its blow-up budget before finishing."""

    def __init__(self, limit: int):
        super().__init__(f"reduction did not finish within {limit} blow-ups")
        self.limit = limit


class JetOrderInsufficient(FolstabError):
    """A computation needed more jet coefficients than were carried."""

    def __init__(self, message: str, order: int | None = None):
        super().__init__(message)
        self.order = order


class SaddleNodeIndexUnsupported(FolstabError):
    """Index computation requested on a saddle-node configuration it
    does not cover."""


class MixedModeComposition(FolstabError):
    """Composition of germs whose multipliers live in incompatible
    representations (symbolic angle vs field element) with nonzero
    higher jets on both sides."""


class AmbiguousKernel(FolstabError):
    """A kernel expected to carry one line had dimension two or more."""

    def __init__(self, message: str, dimension: int | None = None):
        super().__init__(message)
        self.dimension = dimension


class ParseError(FolstabError):
    """Invalid request payload; `path` points at the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.detail = message
