"""Sparse bivariate polynomials over K = Q(i, sqrt(d)) and 1-form germs.

Monomials are keyed (ex, ey); the order used for leading terms and
canonical printing is graded lex with x ahead of y.  Exact single
divisor division doubles as an ideal-membership test: over a field,
the reduced remainder vanishes iff the divisor divides.

`OneFormGerm` holds A dx + B dy saturated: the polynomial gcd of A and
B is divided out on construction and kept in `removed_factor`.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, ZeroDeterminant
from .field import KElement, Rat

Monomial = tuple[int, int]


def _grlex(m: Monomial) -> tuple[int, int]:
    return (m[0] + m[1], m[0])


class SparsePoly:
    """Polynomial in x, y with KElement coefficients."""

    __slots__ = ("d", "c")

    def __init__(self, d: int, coeffs=None):
        table: dict[Monomial, KElement] = {}
        if coeffs:
            for (ex, ey), v in coeffs.items():
                if not (isinstance(ex, int) and isinstance(ey, int)) or ex < 0 or ey < 0:
                    raise ValueError(f"bad monomial ({ex}, {ey})")
                kv = v if isinstance(v, KElement) else KElement(d, v)
                if kv.d != d:
                    if kv.q[1] == 0 and kv.q[3] == 0:
                        kv = KElement(d, kv.q[0], 0, kv.q[2], 0)
                    else:
                        raise ValueError("coefficient from a different field")
                if not kv.is_zero():
                    prev = table.get((ex, ey))
                    kv = kv if prev is None else prev + kv
                    if kv.is_zero():
                        table.pop((ex, ey), None)
                    else:
                        table[(ex, ey)] = kv
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "c", table)

    def __setattr__(self, name, value):
        raise AttributeError("SparsePoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, d: int) -> "SparsePoly":
        return cls(d)

    @classmethod
    def constant(cls, d: int, v: Rat | KElement) -> "SparsePoly":
        return cls(d, {(0, 0): v})

    @classmethod
    def monomial(cls, d: int, ex: int, ey: int, v: Rat | KElement = 1) -> "SparsePoly":
        return cls(d, {(ex, ey): v})

    @classmethod
    def x(cls, d: int) -> "SparsePoly":
        return cls(d, {(1, 0): 1})

    @classmethod
    def y(cls, d: int) -> "SparsePoly":
        return cls(d, {(0, 1): 1})

    def _make(self, table: dict[Monomial, KElement]) -> "SparsePoly":
        out = SparsePoly(self.d)
        object.__setattr__(out, "c", {m: v for m, v in table.items() if not v.is_zero()})
        return out

    # -- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.c

    def coefficient(self, ex: int, ey: int) -> KElement:
        return self.c.get((ex, ey), KElement(self.d))

    def degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        return max((m[0] + m[1] for m in self.c), default=-1)

    def order(self) -> int:
        """Min total degree of a present term; raises on zero."""
        if not self.c:
            raise ValueError("order of the zero polynomial")
        return min(m[0] + m[1] for m in self.c)

    def degree_x(self) -> int:
        return max((m[0] for m in self.c), default=-1)

    def degree_y(self) -> int:
        return max((m[1] for m in self.c), default=-1)

    def leading_monomial(self) -> Monomial:
        if not self.c:
            raise ValueError("leading term of the zero polynomial")
        return max(self.c, key=_grlex)

    def leading_coefficient(self) -> KElement:
        return self.c[self.leading_monomial()]

    def homogeneous_component(self, k: int) -> "SparsePoly":
        return self._make({m: v for m, v in self.c.items() if m[0] + m[1] == k})

    def is_homogeneous(self) -> bool:
        degs = {m[0] + m[1] for m in self.c}
        return len(degs) <= 1

    def truncate(self, n: int) -> "SparsePoly":
        """Drop terms of total degree above n."""
        return self._make({m: v for m, v in self.c.items() if m[0] + m[1] <= n})

    def terms(self):
        """(monomial, coefficient) pairs, grlex descending."""
        for m in sorted(self.c, key=_grlex, reverse=True):
            yield m, self.c[m]

    # -- ring operations ----------------------------------------------

    def _coerce(self, other) -> "SparsePoly | None":
        if isinstance(other, SparsePoly):
            if other.d != self.d:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, (int, Fraction, KElement)):
            return SparsePoly.constant(self.d, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        table = dict(self.c)
        for m, v in o.c.items():
            w = table.get(m)
            w = v if w is None else w + v
            if w.is_zero():
                table.pop(m, None)
            else:
                table[m] = w
        return self._make(table)

    __radd__ = __add__

    def __neg__(self):
        return self._make({m: -v for m, v in self.c.items()})

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
        table: dict[Monomial, KElement] = {}
        for (a1, b1), v1 in self.c.items():
            for (a2, b2), v2 in o.c.items():
                m = (a1 + a2, b1 + b2)
                p = v1 * v2
                w = table.get(m)
                w = p if w is None else w + p
                if w.is_zero():
                    table.pop(m, None)
                else:
                    table[m] = w
        return self._make(table)

    __rmul__ = __mul__

    def mul_truncated(self, other: "SparsePoly", n: int) -> "SparsePoly":
        """Product with terms above total degree n discarded early."""
        table: dict[Monomial, KElement] = {}
        for (a1, b1), v1 in self.c.items():
            if a1 + b1 > n:
                continue
            for (a2, b2), v2 in other.c.items():
                if a1 + b1 + a2 + b2 > n:
                    continue
                m = (a1 + a2, b1 + b2)
                p = v1 * v2
                w = table.get(m)
                w = p if w is None else w + p
                if w.is_zero():
                    table.pop(m, None)
                else:
                    table[m] = w
        return self._make(table)

    def scale(self, v: Rat | KElement) -> "SparsePoly":
        kv = v if isinstance(v, KElement) else KElement(self.d, v)
        if kv.is_zero():
            return SparsePoly(self.d)
        return self._make({m: c * kv for m, c in self.c.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = SparsePoly.constant(self.d, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def div_monomial(self, mx: int, my: int) -> "SparsePoly":
        """Exact division by x^mx y^my; every term must allow it."""
        table = {}
        for (a, b), v in self.c.items():
            if a < mx or b < my:
                raise DivisionByZero(f"term x^{a} y^{b} not divisible by x^{mx} y^{my}")
            table[(a - mx, b - my)] = v
        return self._make(table)

    def exact_div(self, g: "SparsePoly") -> "SparsePoly | None":
        """Quotient self/g when g divides exactly, else None."""
        if g.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if self.is_zero():
            return SparsePoly(self.d)
        gm = g.leading_monomial()
        gc = g.c[gm]
        rest = dict(self.c)
        quot: dict[Monomial, KElement] = {}
        while rest:
            m = max(rest, key=_grlex)
            if m[0] < gm[0] or m[1] < gm[1]:
                return None
            mm = (m[0] - gm[0], m[1] - gm[1])
            cc = rest[m] / gc
            quot[mm] = cc
            for tm, tv in g.c.items():
                key = (tm[0] + mm[0], tm[1] + mm[1])
                w = rest.get(key, KElement(self.d)) - cc * tv
                if w.is_zero():
                    rest.pop(key, None)
                else:
                    rest[key] = w
        return self._make(quot)

    def divides(self, other: "SparsePoly") -> bool:
        return other.exact_div(self) is not None

    # -- calculus and substitution ------------------------------------

    def dx(self) -> "SparsePoly":
        table = {}
        for (a, b), v in self.c.items():
            if a > 0:
                table[(a - 1, b)] = v._scale(a)
        return self._make(table)

    def dy(self) -> "SparsePoly":
        table = {}
        for (a, b), v in self.c.items():
            if b > 0:
                table[(a, b - 1)] = v._scale(b)
        return self._make(table)

    def eval_at(self, vx: Rat | KElement, vy: Rat | KElement) -> KElement:
        kx = vx if isinstance(vx, KElement) else KElement(self.d, vx)
        ky = vy if isinstance(vy, KElement) else KElement(self.d, vy)
        px: dict[int, KElement] = {0: KElement(self.d, 1)}
        py: dict[int, KElement] = {0: KElement(self.d, 1)}

        def power(cache, base, n):
            if n not in cache:
                cache[n] = power(cache, base, n - 1) * base
            return cache[n]

        out = KElement(self.d)
        for (a, b), v in self.c.items():
            out = out + v * power(px, kx, a) * power(py, ky, b)
        return out

    def substitute(self, sx, sy) -> "SparsePoly":
        """Compose: self(sx, sy) for polynomial or scalar arguments."""
        px_ = sx if isinstance(sx, SparsePoly) else SparsePoly.constant(self.d, sx)
        py_ = sy if isinstance(sy, SparsePoly) else SparsePoly.constant(self.d, sy)
        cx: dict[int, SparsePoly] = {0: SparsePoly.constant(self.d, 1)}
        cy: dict[int, SparsePoly] = {0: SparsePoly.constant(self.d, 1)}

        def power(cache, base, n):
            if n not in cache:
                cache[n] = power(cache, base, n - 1) * base
            return cache[n]

        out = SparsePoly(self.d)
        for (a, b), v in self.c.items():
            out = out + (power(cx, px_, a) * power(cy, py_, b)).scale(v)
        return out

    def subs_x(self, v: Rat | KElement) -> "SparsePoly":
        """Partial evaluation x = v; result is a polynomial in y."""
        kv = v if isinstance(v, KElement) else KElement(self.d, v)
        cache: dict[int, KElement] = {0: KElement(self.d, 1)}

        def power(n):
            if n not in cache:
                cache[n] = power(n - 1) * kv
            return cache[n]

        table: dict[Monomial, KElement] = {}
        for (a, b), c in self.c.items():
            w = table.get((0, b), KElement(self.d)) + c * power(a)
            if w.is_zero():
                table.pop((0, b), None)
            else:
                table[(0, b)] = w
        return self._make(table)

    def subs_y(self, v: Rat | KElement) -> "SparsePoly":
        kv = v if isinstance(v, KElement) else KElement(self.d, v)
        cache: dict[int, KElement] = {0: KElement(self.d, 1)}

        def power(n):
            if n not in cache:
                cache[n] = power(n - 1) * kv
            return cache[n]

        table: dict[Monomial, KElement] = {}
        for (a, b), c in self.c.items():
            w = table.get((a, 0), KElement(self.d)) + c * power(b)
            if w.is_zero():
                table.pop((a, 0), None)
            else:
                table[(a, 0)] = w
        return self._make(table)

    def swap_xy(self) -> "SparsePoly":
        return self._make({(b, a): v for (a, b), v in self.c.items()})

    # -- univariate views (main variable y, coefficients in K[x]) -----

    def coefficient_of_y(self, k: int) -> "SparsePoly":
        return self._make({(a, 0): v for (a, b), v in self.c.items() if b == k})

    def lead_coeff_y(self) -> "SparsePoly":
        return self.coefficient_of_y(self.degree_y())

    # -- identity -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.d == other.d and self.c == other.c
        if isinstance(other, (int, Fraction, KElement)):
            o = self._coerce(other)
            return self.c == o.c
        return NotImplemented

    def __hash__(self):
        return hash((self.d, frozenset(self.c.items())))

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        return f"SparsePoly({self})"

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for (a, b), v in self.terms():
            mono = "*".join(
                ([f"x^{a}" if a > 1 else "x"] if a else [])
                + ([f"y^{b}" if b > 1 else "y"] if b else [])
            )
            s = str(v)
            if mono:
                if s == "1":
                    s = mono
                elif s == "-1":
                    s = f"-{mono}"
                else:
                    if ("+" in s[1:]) or ("-" in s[1:].replace("*", "")):
                        s = f"({s})"
                    s = f"{s}*{mono}"
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


# -- gcd over K[x, y] via a primitive remainder sequence ---------------


def _dense_x(p: SparsePoly) -> list[KElement]:
    if p.degree_y() > 0:
        raise ValueError("not univariate in x")
    n = p.degree_x()
    out = [KElement(p.d) for _ in range(n + 1)]
    for (a, _b), v in p.c.items():
        out[a] = v
    return out


def _uni_gcd(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Monic gcd of two polynomials in K[x]."""
    d = f.d
    A, B = _dense_x(f), _dense_x(g)

    def trim(L):
        while L and L[-1].is_zero():
            L.pop()
        return L

    A, B = trim(A[:]), trim(B[:])
    while B:
        # A mod B, classical long division over the field
        lb = B[-1]
        while len(A) >= len(B):
            q = A[-1] / lb
            shift = len(A) - len(B)
            for k in range(len(B)):
                A[shift + k] = A[shift + k] - q * B[k]
            trim(A)
            if not A:
                break
        A, B = B, A
    if not A:
        return SparsePoly(d)
    la = A[-1]
    return SparsePoly(d, {(k, 0): v / la for k, v in enumerate(A)})


def _content_y(p: SparsePoly) -> SparsePoly:
    """Monic gcd in K[x] of the y-coefficients."""
    cont = SparsePoly(p.d)
    for k in range(p.degree_y() + 1):
        ck = p.coefficient_of_y(k)
        if ck.is_zero():
            continue
        cont = ck if cont.is_zero() else _uni_gcd(cont, ck)
        if cont.degree_x() == 0 and not cont.is_zero():
            break
    lc = cont.leading_coefficient()
    return cont.scale(lc.inverse()) if not lc.is_one() else cont


def _primitive_y(p: SparsePoly) -> SparsePoly:
    cont = _content_y(p)
    if cont == 1:
        return p
    pp = p.exact_div(cont)
    assert pp is not None
    return pp


def _prem_y(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Pseudo-remainder of f by g as polynomials in y over K[x]."""
    dg = g.degree_y()
    lcg = g.lead_coeff_y()
    r = f
    while not r.is_zero() and r.degree_y() >= dg:
        dr = r.degree_y()
        shift = SparsePoly.monomial(f.d, 0, dr - dg)
        r = lcg * r - r.lead_coeff_y() * shift * g
    return r


def poly_gcd(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Gcd in K[x, y], normalized with grlex leading coefficient 1."""
    if f.d != g.d:
        raise ValueError("polynomials over different fields")
    d = f.d

    def monic(p: SparsePoly) -> SparsePoly:
        if p.is_zero():
            return p
        lc = p.leading_coefficient()
        return p if lc.is_one() else p.scale(lc.inverse())

    if f.is_zero():
        return monic(g)
    if g.is_zero():
        return monic(f)
    fy, gy = f.degree_y(), g.degree_y()
    if fy == 0 and gy == 0:
        return _uni_gcd(f, g)
    if fy == 0:
        return _uni_gcd(f, _content_y(g))
    if gy == 0:
        return _uni_gcd(g, _content_y(f))
    cont = _uni_gcd(_content_y(f), _content_y(g))
    a, b = _primitive_y(f), _primitive_y(g)
    if a.degree_y() < b.degree_y():
        a, b = b, a
    while True:
        r = _prem_y(a, b)
        if r.is_zero():
            core = _primitive_y(b)
            break
        if r.degree_y() == 0:
            core = SparsePoly.constant(d, 1)
            break
        a, b = b, _primitive_y(r)
    return monic(cont * core)


def gcd_many(polys: list[SparsePoly]) -> SparsePoly:
    if not polys:
        raise ValueError("gcd of an empty list")
    out = polys[0]
    for p in polys[1:]:
        out = poly_gcd(out, p)
    return out


# -- one-form germs ----------------------------------------------------


class OneFormGerm:
    """Saturated 1-form A dx + B dy; dual field X = B d/dx - A d/dy."""

    __slots__ = ("d", "A", "B", "removed_factor")

    def __init__(self, A: SparsePoly, B: SparsePoly):
        if A.d != B.d:
            raise ValueError("components over different fields")
        if A.is_zero() and B.is_zero():
            raise ValueError("zero 1-form")
        g = poly_gcd(A, B)
        if g.degree() > 0:
            qa = A.exact_div(g)
            qb = B.exact_div(g)
            assert qa is not None and qb is not None
            A, B, removed = qa, qb, g
        else:
            removed = None
        object.__setattr__(self, "d", A.d)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "removed_factor", removed)

    def __setattr__(self, name, value):
        raise AttributeError("OneFormGerm is immutable")

    @classmethod
    def from_vector_field(cls, P: SparsePoly, Q: SparsePoly) -> "OneFormGerm":
        """Form P dy - Q dx dual to X = P d/dx + Q d/dy."""
        return cls(-Q, P)

    def to_vector_field(self) -> tuple[SparsePoly, SparsePoly]:
        return self.B, -self.A

    def multiplicity(self) -> int:
        """Algebraic multiplicity at the origin after saturation."""
        orders = []
        if not self.A.is_zero():
            orders.append(self.A.order())
        if not self.B.is_zero():
            orders.append(self.B.order())
        return min(orders)

    def is_singular(self) -> bool:
        return self.multiplicity() >= 1

    def jacobian(self) -> tuple[tuple[KElement, KElement], tuple[KElement, KElement]]:
        """Linear part of the dual vector field, rows (d/dx, d/dy)."""
        a10, a01 = self.A.coefficient(1, 0), self.A.coefficient(0, 1)
        b10, b01 = self.B.coefficient(1, 0), self.B.coefficient(0, 1)
        return ((b10, b01), (-a10, -a01))

    def lie_derivative(self, F: SparsePoly) -> SparsePoly:
        """X(F) for the dual field; equals the dF wedge coefficient."""
        return self.B * F.dx() - self.A * F.dy()

    def annihilates(self, F: SparsePoly) -> bool:
        return self.lie_derivative(F).is_zero()

    def wedge_scalar(self, P: SparsePoly, Q: SparsePoly) -> SparsePoly:
        """(P dx + Q dy) wedge (A dx + B dy) over dx wedge dy."""
        return P * self.B - Q * self.A

    def pullback_components(self, phi1: SparsePoly, phi2: SparsePoly):
        """Raw components of the pullback under (x, y) -> (phi1, phi2)."""
        Ac = self.A.substitute(phi1, phi2)
        Bc = self.B.substitute(phi1, phi2)
        return (
            Ac * phi1.dx() + Bc * phi2.dx(),
            Ac * phi1.dy() + Bc * phi2.dy(),
        )

    def translate(self, p: Rat | KElement, q: Rat | KElement) -> "OneFormGerm":
        """Germ at the point (p, q), moved to the origin."""
        x = SparsePoly.x(self.d)
        y = SparsePoly.y(self.d)
        A2, B2 = self.pullback_components(x + p, y + q)
        return OneFormGerm(A2, B2)

    def linear_change(self, m) -> "OneFormGerm":
        """Pullback under (x, y) -> (m00 x + m01 y, m10 x + m11 y)."""
        (m00, m01), (m10, m11) = m
        det = m00 * m11 - m01 * m10
        if (det.is_zero() if isinstance(det, KElement) else det == 0):
            raise ZeroDeterminant("coordinate change with zero determinant")
        x = SparsePoly.x(self.d)
        y = SparsePoly.y(self.d)
        phi1 = x.scale(m00) + y.scale(m01)
        phi2 = x.scale(m10) + y.scale(m11)
        A2, B2 = self.pullback_components(phi1, phi2)
        return OneFormGerm(A2, B2)

    def __eq__(self, other):
        if not isinstance(other, OneFormGerm):
            return NotImplemented
        return self.A == other.A and self.B == other.B

    def __hash__(self):
        return hash((self.A, self.B))

    def __repr__(self):
        return f"OneFormGerm(({self.A}) dx + ({self.B}) dy)"
