"""Exact arithmetic in K = Q(i, sqrt(d)) for a square-free integer d >= 1.

Elements are stored on the basis (1, sqrt(d), i, i*sqrt(d)) with Fraction
coordinates.  For d = 1 the radical collapses and coordinates are folded
into the rational/imaginary slots at construction, so equality stays a
coordinate comparison.

All predicates here are exact: sign of a real element, membership of a
square root, comparisons.  Floating point appears only in `to_complex`.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DivisionByZero

Rat = int | Fraction

_checked_d: set[int] = set()


def check_field_parameter(d: int) -> int:
    """Validate d: a positive square-free integer.  Returns d."""
    if d in _checked_d:
        return d
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ValueError(f"field parameter must be a positive integer, got {d!r}")
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            raise ValueError(f"field parameter must be square-free, got {d}")
        k += 1
    _checked_d.add(d)
    return d


def frac_sqrt(q: Fraction | int) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rm = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rm * rm == q.denominator:
        return Fraction(rn, rm)
    return None


def _sgn(x: Fraction) -> int:
    return (x > 0) - (x < 0)


class KElement:
    """q0 + q1*sqrt(d) + q2*i + q3*i*sqrt(d), all qi rational."""

    __slots__ = ("d", "q")

    def __init__(self, d: int, q0: Rat = 0, q1: Rat = 0, q2: Rat = 0, q3: Rat = 0):
        check_field_parameter(d)
        q0, q1, q2, q3 = (Fraction(q0), Fraction(q1), Fraction(q2), Fraction(q3))
        if d == 1:
            # sqrt(1) = 1: fold so each value has one representation
            q0, q1 = q0 + q1, Fraction(0)
            q2, q3 = q2 + q3, Fraction(0)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "q", (q0, q1, q2, q3))

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("KElement is immutable")

    @classmethod
    def rational(cls, d: int, value: Rat) -> "KElement":
        return cls(d, value)

    def _new(self, q0: Rat, q1: Rat, q2: Rat, q3: Rat) -> "KElement":
        return KElement(self.d, q0, q1, q2, q3)

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.q)

    def is_one(self) -> bool:
        return self.q[0] == 1 and self.q[1] == 0 and self.q[2] == 0 and self.q[3] == 0

    def is_rational(self) -> bool:
        return self.q[1] == 0 and self.q[2] == 0 and self.q[3] == 0

    def is_real(self) -> bool:
        return self.q[2] == 0 and self.q[3] == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.q[0]

    # -- ring structure -----------------------------------------------

    def _coerce(self, other) -> "KElement | None":
        if isinstance(other, KElement):
            if other.d == self.d:
                return other
            if other.q[1] == 0 and other.q[3] == 0:
                return self._new(other.q[0], 0, other.q[2], 0)
            if self.q[1] == 0 and self.q[3] == 0:
                return other  # caller re-dispatches on the wider element
            raise ValueError(
                f"cannot mix sqrt({self.d}) and sqrt({other.d}) elements"
            )
        if isinstance(other, (int, Fraction)):
            return self._new(other, 0, 0, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.d != self.d:
            return o + self
        a, b = self.q, o.q
        return self._new(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.q[0], -self.q[1], -self.q[2], -self.q[3])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.d != self.d:
            return o * self
        d = self.d
        a0, a1, a2, a3 = self.q
        b0, b1, b2, b3 = o.q
        return self._new(
            a0 * b0 + d * a1 * b1 - a2 * b2 - d * a3 * b3,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a2 * b0 + d * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )

    __rmul__ = __mul__

    def _scale(self, r: Rat) -> "KElement":
        r = Fraction(r)
        return self._new(self.q[0] * r, self.q[1] * r, self.q[2] * r, self.q[3] * r)

    def conjugate(self) -> "KElement":
        """Complex conjugation i -> -i."""
        return self._new(self.q[0], self.q[1], -self.q[2], -self.q[3])

    def sqrt_conjugate(self) -> "KElement":
        """Galois conjugation sqrt(d) -> -sqrt(d)."""
        return self._new(self.q[0], -self.q[1], self.q[2], -self.q[3])

    def real_part(self) -> "KElement":
        return self._new(self.q[0], self.q[1], 0, 0)

    def imag_part(self) -> "KElement":
        """The real element b in self = a + b*i."""
        return self._new(self.q[2], self.q[3], 0, 0)

    def inverse(self) -> "KElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        zbar = self.conjugate()
        t = self * zbar  # lands in the real subfield Q(sqrt(d))
        n = t.q[0] * t.q[0] - self.d * t.q[1] * t.q[1]  # rational, nonzero
        return (zbar * t.sqrt_conjugate())._scale(Fraction(1, 1) / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self._scale(Fraction(1, 1) / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = KElement(self.d, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order structure on the real subfield -------------------------

    def sign(self) -> int:
        """Exact sign of a real element; raises on non-real input."""
        if not self.is_real():
            raise ValueError(f"sign of non-real element {self!r}")
        a, b = self.q[0], self.q[1]
        if b == 0:
            return _sgn(a)
        if a == 0:
            return _sgn(b)
        sa, sb = _sgn(a), _sgn(b)
        if sa == sb:
            return sa
        # opposite pulls: |a| vs |b|*sqrt(d) decided on squares
        return sa * _sgn(a * a - self.d * b * b)

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    # -- square roots -------------------------------------------------

    def _sqrt_real_nonneg(self) -> "KElement | None":
        """Nonnegative square root of a nonnegative real element, in
        Q(sqrt(d)) if it exists there."""
        a0, a1 = self.q[0], self.q[1]
        d = self.d
        if a1 == 0:
            r = frac_sqrt(a0)
            if r is not None:
                return self._new(r, 0, 0, 0)
            r = frac_sqrt(a0 / d)
            if r is not None:
                return self._new(0, r, 0, 0)
            return None
        s = frac_sqrt(a0 * a0 - d * a1 * a1)
        if s is None:
            return None
        for x2 in ((a0 + s) / 2, (a0 - s) / 2):
            x0 = frac_sqrt(x2)
            if x0 is not None and x0 != 0:
                w = self._new(x0, a1 / (2 * x0), 0, 0)
                return w if w.sign() >= 0 else -w
        return None

    def sqrt(self) -> "KElement | None":
        """A w in K with w*w == self, or None when none exists.

        Canonical choice: real part positive, or purely imaginary with
        positive imaginary part, or zero.
        """
        re, im = self.real_part(), self.imag_part()
        if im.is_zero():
            if re.sign() >= 0:
                return re._sqrt_real_nonneg()
            w = (-re)._sqrt_real_nonneg()
            if w is None:
                return None
            return self._new(0, 0, w.q[0], w.q[1])  # i * w
        m = (re * re + im * im)._sqrt_real_nonneg()
        if m is None:
            return None
        x = ((re + m)._scale(Fraction(1, 2)))._sqrt_real_nonneg()
        if x is None or x.is_zero():
            return None
        y = im / (x._scale(2))
        # (x + y i)^2 = x^2 - y^2 + im*i and x^2 - y^2 = re by construction
        return self._new(x.q[0], x.q[1], y.q[0], y.q[1])

    # -- conversions --------------------------------------------------

    def to_complex(self) -> complex:
        r = math.sqrt(self.d)
        return complex(
            float(self.q[0]) + float(self.q[1]) * r,
            float(self.q[2]) + float(self.q[3]) * r,
        )

    def as_fraction_strings(self) -> tuple[str, str, str, str]:
        return tuple(str(c) for c in self.q)  # type: ignore[return-value]

    # -- identity -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, KElement):
            if other.d == self.d:
                return self.q == other.q
            # no radical part on either side: value independent of d
            return (
                self.q[1] == 0
                and self.q[3] == 0
                and other.q[1] == 0
                and other.q[3] == 0
                and self.q[0] == other.q[0]
                and self.q[2] == other.q[2]
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.q[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.q[0])
        if self.q[1] == 0 and self.q[3] == 0:
            return hash(("gauss", self.q[0], self.q[2]))
        return hash((self.d,) + self.q)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"KElement(d={self.d}, {self})"

    def __str__(self):
        names = ("", f"*sqrt({self.d})", "*i", f"*i*sqrt({self.d})")
        parts: list[str] = []
        for c, tail in zip(self.q, names):
            if c == 0:
                continue
            if tail and abs(c) == 1:
                body = tail[1:]  # drop the "*"
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{c}{tail}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out
