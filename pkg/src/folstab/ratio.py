"""Exact classification of the eigenvalue ratio at a nondegenerate
singular point.

The ratio r of the two eigenvalues of the linear part satisfies the
reciprocal quadratic det*r^2 - (tr^2 - 2 det) r + det = 0, whose two
roots are r and 1/r.  When the discriminant has a square root in K the
roots are materialized; otherwise the quadratic itself is kept and the
class is decided without leaving K: a quadratic with real coefficients
splits over R by the sign of its discriminant, and one with genuinely
complex coefficients sharing no root with its coefficient-conjugate has
no real root at all.

Class names follow the usual dichotomy: the Siegel domain is the
negative real axis (rationals included), everything else in C* is
Poincare.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .field import KElement
from .poly import SparsePoly, poly_gcd


class RatioClass(Enum):
    POSITIVE_RATIONAL = "positive-rational"
    NEGATIVE_RATIONAL = "negative-rational"
    REAL_IRRATIONAL = "real-irrational"
    NON_REAL = "non-real"


@dataclass(frozen=True)
class RatioInfo:
    ratio_class: RatioClass
    domain: str  # "poincare" | "siegel"
    as_fraction: Fraction | None = None
    resonant_pq: tuple[int, int] | None = None

    @property
    def is_siegel(self) -> bool:
        return self.domain == "siegel"


class AlgebraicRatio:
    """Eigenvalue ratio, exact: either an element of K or a monic
    quadratic r^2 + B r + C over K that it satisfies."""

    __slots__ = ("d", "value", "quad")

    def __init__(self, d: int, value: KElement | None = None, quad=None):
        if (value is None) == (quad is None):
            raise ValueError("exactly one of value/quad must be given")
        if value is not None and value.is_zero():
            raise ValueError("eigenvalue ratio cannot be zero")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "quad", quad)

    def __setattr__(self, name, v):
        raise AttributeError("AlgebraicRatio is immutable")

    @classmethod
    def from_value(cls, v: KElement) -> "AlgebraicRatio":
        return cls(v.d, value=v)

    @classmethod
    def from_matrix(cls, trace: KElement, det: KElement) -> "AlgebraicRatio":
        """Ratio of the eigenvalues of a 2x2 matrix given exactly by
        trace and determinant; one of the two reciprocal ratios is
        chosen canonically (modulus <= 1, then imaginary part >= 0)."""
        if det.is_zero():
            raise ValueError("ratio undefined for zero determinant")
        d = det.d
        B = KElement(d, 2) - trace * trace * det.inverse()
        C = KElement(d, 1)
        s = (B * B - 4 * C).sqrt()
        if s is None:
            return cls(d, quad=(B, C))
        r1 = (s - B)._scale(Fraction(1, 2))
        r2 = ((-s) - B)._scale(Fraction(1, 2))
        dm = (r1 * r1.conjugate() - r2 * r2.conjugate()).real_part().sign()
        if dm < 0:
            pick = r1
        elif dm > 0:
            pick = r2
        else:
            pick = r1 if r1.imag_part().sign() >= r2.imag_part().sign() else r2
        return cls(d, value=pick)

    # -- classification -----------------------------------------------

    def classify(self) -> RatioInfo:
        if self.value is not None:
            return self._classify_value(self.value)
        return self._classify_quad(*self.quad)

    @staticmethod
    def _classify_value(v: KElement) -> RatioInfo:
        if v.is_real():
            sgn = v.sign()
            if v.is_rational():
                fr = v.to_fraction()
                if sgn > 0:
                    return RatioInfo(RatioClass.POSITIVE_RATIONAL, "poincare", fr)
                return RatioInfo(
                    RatioClass.NEGATIVE_RATIONAL,
                    "siegel",
                    fr,
                    (-fr.numerator, fr.denominator),
                )
            domain = "poincare" if sgn > 0 else "siegel"
            return RatioInfo(RatioClass.REAL_IRRATIONAL, domain)
        return RatioInfo(RatioClass.NON_REAL, "poincare")

    def _classify_quad(self, B: KElement, C: KElement) -> RatioInfo:
        if B.is_real() and C.is_real():
            disc = B * B - 4 * C
            if disc.sign() < 0:
                return RatioInfo(RatioClass.NON_REAL, "poincare")
            # two real roots outside K, hence irrational; their signs
            # agree iff the product C is positive
            if C.sign() <= 0:
                raise ValueError("quadratic with real roots of mixed sign")
            domain = "poincare" if (-B).sign() > 0 else "siegel"
            return RatioInfo(RatioClass.REAL_IRRATIONAL, domain)
        d = self.d
        q = SparsePoly(d, {(0, 2): 1, (0, 1): B, (0, 0): C})
        qc = SparsePoly(d, {(0, 2): 1, (0, 1): B.conjugate(), (0, 0): C.conjugate()})
        g = poly_gcd(q, qc)
        # a common root in K would mean the quadratic splits, and the
        # full quadratic in common means real coefficients: both are
        # excluded here, so a real root is impossible
        assert g.degree() == 0
        return RatioInfo(RatioClass.NON_REAL, "poincare")

    # -- numerics -----------------------------------------------------

    def numeric_roots(self) -> list[complex]:
        """Float approximations of the ratio and its reciprocal."""
        if self.value is not None:
            v = self.value.to_complex()
            out = [v, 1 / v]
        else:
            B, C = self.quad
            b, c = B.to_complex(), C.to_complex()
            s = (b * b - 4 * c) ** 0.5
            out = [(-b + s) / 2, (-b - s) / 2]
        return sorted(out, key=lambda z: (z.real, z.imag))

    def __eq__(self, other):
        if not isinstance(other, AlgebraicRatio):
            return NotImplemented
        return self.value == other.value and self.quad == other.quad

    def __repr__(self):
        if self.value is not None:
            return f"AlgebraicRatio({self.value})"
        B, C = self.quad
        return f"AlgebraicRatio(r^2 + ({B}) r + ({C}) = 0)"
