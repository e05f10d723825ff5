"""One-dimensional holonomy germs and their group classification.

A holonomy germ f(z) = m z + c_2 z^2 + ... is held exactly: the
multiplier m either as a value in K or as exp(2 pi i theta) with theta
rational or an element of K, and the jet coefficients c_k in K up to a
truncation order.  Roots of unity of order q live in K only for
q in {1, 2, 4} (any d), {3, 6, 12} (d = 3) and {8} (d = 2); a rational
rotation whose root exists in the working field is materialized to a
value at construction so compositions stay in K.

`classify_group` scans generators, probes pair commutators, then walks
words breadth-first, stopping at the first witness of non-trivial
dynamics (a flat germ, a hyperbolic multiplier, or a certified resonant
obstruction).  Groups it cannot certify are reported undetermined,
never stable.
"""

from __future__ import annotations

import cmath
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import lcm

from .errors import MixedModeComposition
from .field import KElement


def _zeta(q: int, d: int) -> KElement | None:
    """Primitive q-th root of unity in Q(i, sqrt(d)), when it exists."""
    half = Fraction(1, 2)
    if q == 1:
        return KElement(d, 1)
    if q == 2:
        return KElement(d, -1)
    if q == 4:
        return KElement(d, 0, 0, 1)
    if q == 3 and d == 3:
        return KElement(d, -half, 0, 0, half)
    if q == 6 and d == 3:
        return KElement(d, half, 0, 0, half)
    if q == 12 and d == 3:
        return KElement(d, 0, half, half, 0)
    if q == 8 and d == 2:
        return KElement(d, 0, half, 0, half)
    return None


class Multiplier:
    """Linear part of a germ: a value in K or exp(2 pi i theta)."""

    __slots__ = ("kind", "value", "theta")

    def __init__(self, kind, value=None, theta=None):
        self.kind = kind
        self.value = value
        self.theta = theta

    @classmethod
    def of(cls, value: KElement) -> "Multiplier":
        if value.is_zero():
            raise ValueError("multiplier must be invertible")
        return cls("value", value=value)

    @classmethod
    def exp2pi_i(cls, theta) -> "Multiplier":
        if isinstance(theta, int):
            theta = Fraction(theta)
        if isinstance(theta, KElement) and theta.is_rational():
            theta = theta.to_fraction()
        if isinstance(theta, Fraction):
            theta = theta % 1
        else:
            shift = theta.q[0] - (theta.q[0].numerator // theta.q[0].denominator)
            theta = KElement(theta.d, shift, theta.q[1], theta.q[2], theta.q[3])
        return cls("exp", theta=theta)

    def is_one(self) -> bool:
        if self.kind == "value":
            return self.value.is_one()
        return isinstance(self.theta, Fraction) and self.theta == 0

    def is_rotation(self) -> bool:
        if self.kind == "value":
            return (self.value * self.value.conjugate()).is_one()
        if isinstance(self.theta, Fraction):
            return True
        return self.theta.imag_part().is_zero()

    def is_hyperbolic(self) -> bool:
        return not self.is_rotation()

    def root_of_unity_order(self) -> int | None:
        """Smallest q <= 12 with m^q = 1; K admits no larger orders."""
        if self.kind == "exp":
            if isinstance(self.theta, Fraction):
                return self.theta.denominator
            return None
        if not self.is_rotation():
            return None
        acc = self.value
        for q in range(1, 13):
            if acc.is_one():
                return q
            acc = acc * self.value
        return None

    def _as_rational_angle(self) -> Fraction | None:
        """p/q with m = exp(2 pi i p/q), for a root-of-unity value."""
        q = self.root_of_unity_order()
        if q is None:
            return None
        if self.kind == "exp":
            return self.theta
        z = _zeta(q, self.value.d)
        acc = KElement(self.value.d, 1)
        for p in range(q):
            if acc == self.value:
                return Fraction(p, q)
            acc = acc * z
        raise AssertionError("root of unity without a matching power")

    def materialize(self, d: int) -> KElement | None:
        """The multiplier as an element of Q(i, sqrt(d)), when possible."""
        if self.kind == "value":
            if self.value.d == d or (self.value.q[1] == 0 and self.value.q[3] == 0):
                return KElement(d, self.value.q[0], 0, self.value.q[2], 0) \
                    if self.value.d != d else self.value
            return None
        if not isinstance(self.theta, Fraction):
            return None
        z = _zeta(self.theta.denominator, d)
        if z is None:
            return None
        return z ** self.theta.numerator

    def inverse(self) -> "Multiplier":
        if self.kind == "value":
            return Multiplier.of(self.value.inverse())
        return Multiplier.exp2pi_i(-self.theta)

    def mul(self, other: "Multiplier") -> "Multiplier":
        if self.kind == "value" and other.kind == "value":
            return Multiplier.of(self.value * other.value)
        if self.kind == "exp" and other.kind == "exp":
            return Multiplier.exp2pi_i(self.theta + other.theta)
        val, exp = (self, other) if self.kind == "value" else (other, self)
        angle = val._as_rational_angle()
        if angle is not None:
            return Multiplier.exp2pi_i(angle + exp.theta)
        z = exp.materialize(val.value.d)
        if z is not None:
            return Multiplier.of(val.value * z)
        raise MixedModeComposition(
            "cannot combine a non-periodic value multiplier with a "
            "transcendental rotation"
        )

    def numeric(self) -> complex:
        if self.kind == "value":
            return self.value.to_complex()
        t = self.theta if isinstance(self.theta, Fraction) else self.theta.to_complex()
        return cmath.exp(2j * cmath.pi * complex(t))

    def __eq__(self, other):
        if not isinstance(other, Multiplier):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == "value":
            return self.value == other.value
        return self.theta == other.theta

    def __hash__(self):
        if self.kind == "value":
            return hash(("mult-v", self.value))
        return hash(("mult-e", self.theta))

    def __repr__(self):
        if self.kind == "value":
            return f"Multiplier({self.value})"
        return f"Multiplier(exp(2*pi*i * {self.theta}))"


def holonomy_multiplier(index) -> Multiplier:
    """Multiplier exp(2 pi i index) of the holonomy attached to an
    invariant-curve index."""
    if isinstance(index, KElement) and index.is_rational():
        index = index.to_fraction()
    if isinstance(index, int):
        index = Fraction(index)
    return Multiplier.exp2pi_i(index)


def _mul_trunc(a, b, n, d):
    out = [KElement(d)] * n
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            k = i + j + 1
            if k >= n:
                break
            if not bj.is_zero():
                out[k] = out[k] + ai * bj
    return out


def _compose_dense(f, g, n, d):
    """Coefficients of f(g(z)); index t holds the z^(t+1) coefficient."""
    out = [KElement(d)] * n
    p = list(g)
    for t in range(n):
        c = f[t]
        if not c.is_zero():
            for k in range(n):
                if not p[k].is_zero():
                    out[k] = out[k] + c * p[k]
        if t + 1 < n:
            p = _mul_trunc(p, g, n, d)
    return out


class FormalGerm:
    """Exact 1-d germ m z + sum c_k z^k, truncated at a fixed order."""

    __slots__ = ("d", "multiplier", "jets", "order")

    def __init__(self, d: int, multiplier: Multiplier, jets=None, order: int = 12):
        if order < 1:
            raise ValueError("order must be at least 1")
        clean: dict[int, KElement] = {}
        for k, v in (jets or {}).items():
            if not 2 <= k <= order:
                raise ValueError(f"jet exponent {k} outside 2..{order}")
            kv = v if isinstance(v, KElement) else KElement(d, v)
            if not kv.is_zero():
                clean[k] = kv
        mv = multiplier.materialize(d)
        if multiplier.kind == "exp" and mv is not None:
            multiplier = Multiplier.of(mv)
        self.d = d
        self.multiplier = multiplier
        self.jets = clean
        self.order = order

    @classmethod
    def identity(cls, d: int, order: int = 12) -> "FormalGerm":
        return cls(d, Multiplier.of(KElement(d, 1)), {}, order)

    def is_identity(self) -> bool:
        return self.multiplier.is_one() and not self.jets

    def signature(self):
        return (self.multiplier, tuple(sorted(self.jets.items())))

    def _dense(self, n: int, mv: KElement):
        out = [KElement(self.d)] * n
        out[0] = mv
        for k, v in self.jets.items():
            if k <= n:
                out[k - 1] = v
        return out

    def _materialized(self) -> KElement:
        mv = self.multiplier.materialize(self.d)
        if mv is None:
            raise MixedModeComposition(
                "germ with nonlinear jets needs a multiplier in K"
            )
        return mv

    def compose(self, other: "FormalGerm") -> "FormalGerm":
        """self after other: z -> self(other(z))."""
        if self.d != other.d:
            raise ValueError("germs over different fields")
        n = min(self.order, other.order)
        if not self.jets and not other.jets:
            return FormalGerm(self.d, self.multiplier.mul(other.multiplier), {}, n)
        f = self._dense(n, self._materialized())
        g = other._dense(n, other._materialized())
        out = _compose_dense(f, g, n, self.d)
        return FormalGerm(
            self.d,
            Multiplier.of(out[0]),
            {t + 1: v for t, v in enumerate(out) if t >= 1},
            n,
        )

    def inverse(self) -> "FormalGerm":
        if not self.jets:
            return FormalGerm(self.d, self.multiplier.inverse(), {}, self.order)
        n = self.order
        mv = self._materialized()
        f = self._dense(n, mv)
        mi = mv.inverse()
        b = [KElement(self.d)] * n
        b[0] = mi
        for k in range(1, n):
            comp = _compose_dense(f, b, k + 1, self.d)
            b[k] = -mi * comp[k]
        return FormalGerm(
            self.d,
            Multiplier.of(mi),
            {t + 1: v for t, v in enumerate(b) if t >= 1},
            n,
        )

    def power(self, q: int) -> "FormalGerm":
        out = FormalGerm.identity(self.d, self.order)
        for _ in range(q):
            out = out.compose(self)
        return out

    def numeric_coeffs(self) -> list[complex]:
        out = [0j] * self.order
        out[0] = self.multiplier.numeric()
        for k, v in self.jets.items():
            out[k - 1] = v.to_complex()
        return out

    def __eq__(self, other):
        if not isinstance(other, FormalGerm):
            return NotImplemented
        return (
            self.d == other.d
            and self.multiplier == other.multiplier
            and self.jets == other.jets
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.d, self.signature(), self.order))

    def __repr__(self):
        parts = [f"({self.multiplier})*z"]
        for k in sorted(self.jets):
            parts.append(f"({self.jets[k]})*z^{k}")
        return "FormalGerm(" + " + ".join(parts) + f"; order {self.order})"


class GermKind(Enum):
    IDENTITY = "identity"
    FLAT = "flat"
    PERIODIC = "periodic"
    RESONANT_NONLINEARIZABLE = "resonant-nonlinearizable"
    HYPERBOLIC = "hyperbolic"
    IRRATIONAL_LINEAR = "irrational-rotation-linear"
    IRRATIONAL_UNDETERMINED = "irrational-rotation-undetermined"


WITNESS_KINDS = frozenset(
    {GermKind.FLAT, GermKind.RESONANT_NONLINEARIZABLE, GermKind.HYPERBOLIC}
)


@dataclass
class GermClass:
    kind: GermKind
    through_order: int
    period: int | None = None
    flat_order: int | None = None
    obstruction_order: int | None = None


def classify_germ(f: FormalGerm) -> GermClass:
    m = f.multiplier
    if m.is_one():
        if not f.jets:
            return GermClass(GermKind.IDENTITY, f.order)
        return GermClass(GermKind.FLAT, f.order, flat_order=min(f.jets))
    q = m.root_of_unity_order()
    if q is not None:
        if not f.jets:
            return GermClass(GermKind.PERIODIC, f.order, period=q)
        p = f.power(q)
        if p.is_identity():
            return GermClass(GermKind.PERIODIC, f.order, period=q)
        return GermClass(
            GermKind.RESONANT_NONLINEARIZABLE,
            f.order,
            period=q,
            obstruction_order=min(p.jets),
        )
    if m.is_hyperbolic():
        return GermClass(GermKind.HYPERBOLIC, f.order)
    if f.jets:
        return GermClass(GermKind.IRRATIONAL_UNDETERMINED, f.order)
    return GermClass(GermKind.IRRATIONAL_LINEAR, f.order)


class GroupClass(Enum):
    FINITE_CYCLIC = "finite-cyclic"
    CIRCLE_TYPE = "circle-type"
    WITNESS = "witness-of-instability"
    UNDETERMINED = "undetermined"


@dataclass
class GroupResult:
    classification: GroupClass
    witness: tuple[str, GermClass] | None = None
    order: int | None = None
    element_count: int = 0
    compositions: int = 0
    reason: str | None = None
    reason_word: str | None = None
    notes: list[str] = field(default_factory=list)


def classify_group(germs, word_budget: int = 200) -> GroupResult:
    """Classify the pseudogroup generated by the given germs."""
    germs = list(germs)
    notes: list[str] = []
    if not germs:
        return GroupResult(GroupClass.FINITE_CYCLIC, order=1, element_count=1)
    d = germs[0].d
    if any(g.d != d for g in germs):
        raise ValueError("generators over different fields")

    classified: list[tuple[str, FormalGerm, GermClass]] = []
    for i, g in enumerate(germs):
        try:
            cls = classify_germ(g)
        except MixedModeComposition as exc:
            return GroupResult(
                GroupClass.UNDETERMINED,
                reason=f"generator g{i}: {exc}",
                reason_word=f"g{i}",
                notes=notes,
            )
        if cls.kind in WITNESS_KINDS:
            return GroupResult(
                GroupClass.WITNESS,
                witness=(f"g{i}", cls),
                element_count=len(germs),
                notes=notes,
            )
        classified.append((f"g{i}", g, cls))

    compositions = 0

    def compose_word(a, b):
        nonlocal compositions
        compositions += 1
        return a.compose(b)

    # pair commutators first: the cheapest source of flat witnesses
    for i in range(len(germs)):
        for j in range(i + 1, len(germs)):
            try:
                gi, gj = germs[i], germs[j]
                comm = compose_word(
                    compose_word(compose_word(gi, gj), gi.inverse()), gj.inverse()
                )
                cls = classify_germ(comm)
            except MixedModeComposition as exc:
                notes.append(f"commutator [g{i},g{j}] left the representable class")
                continue
            if cls.kind in WITNESS_KINDS:
                return GroupResult(
                    GroupClass.WITNESS,
                    witness=(f"[g{i},g{j}]", cls),
                    element_count=len(germs),
                    compositions=compositions,
                    notes=notes,
                )

    # breadth-first closure, deduplicated by exact jet signature
    elements: dict = {}
    queue: deque[tuple[str, FormalGerm]] = deque()
    seeds: list[tuple[str, FormalGerm]] = [(w, g) for w, g, _ in classified]
    for w, g in list(seeds):
        try:
            seeds.append((w + "~", g.inverse()))
        except MixedModeComposition:
            notes.append(f"inverse of {w} left the representable class")
    ident = FormalGerm.identity(d, min(g.order for g in germs))
    elements[ident.signature()] = ("e", ident, classify_germ(ident))
    for w, g in seeds:
        if g.signature() not in elements:
            elements[g.signature()] = (w, g, classify_germ(g))
            queue.append((w, g))
    closed = True
    mixed_word = None
    while queue:
        if compositions >= word_budget:
            closed = False
            break
        word, g = queue.popleft()
        for w2, g2 in seeds:
            if compositions >= word_budget:
                closed = False
                break
            try:
                nxt = compose_word(g, g2)
            except MixedModeComposition:
                if mixed_word is None:
                    mixed_word = f"{word}*{w2}"
                notes.append(f"word {word}*{w2} left the representable class")
                continue
            sig = nxt.signature()
            if sig in elements:
                continue
            try:
                cls = classify_germ(nxt)
            except MixedModeComposition:
                if mixed_word is None:
                    mixed_word = f"{word}*{w2}"
                notes.append(f"word {word}*{w2} resists classification")
                continue
            nw = f"{word}*{w2}"
            if cls.kind in WITNESS_KINDS:
                return GroupResult(
                    GroupClass.WITNESS,
                    witness=(nw, cls),
                    element_count=len(elements),
                    compositions=compositions,
                    notes=notes,
                )
            elements[sig] = (nw, nxt, cls)
            queue.append((nw, nxt))

    kinds = {cls.kind for _, _, cls in elements.values()}
    undet = [
        (w, cls)
        for w, _, cls in elements.values()
        if cls.kind is GermKind.IRRATIONAL_UNDETERMINED
    ]
    if undet:
        w, _ = min(undet, key=lambda t: (len(t[0]), t[0]))
        return GroupResult(
            GroupClass.UNDETERMINED,
            element_count=len(elements),
            compositions=compositions,
            reason="irrational rotation with a nonlinear jet: linearizability "
            "is outside the certified range",
            reason_word=w,
            notes=notes,
        )
    if mixed_word is not None:
        return GroupResult(
            GroupClass.UNDETERMINED,
            element_count=len(elements),
            compositions=compositions,
            reason="composition left the representable class",
            reason_word=mixed_word,
            notes=notes,
        )
    if GermKind.IRRATIONAL_LINEAR in kinds:
        return GroupResult(
            GroupClass.CIRCLE_TYPE,
            element_count=len(elements),
            compositions=compositions,
            notes=notes,
        )
    if closed and kinds <= {GermKind.IDENTITY, GermKind.PERIODIC}:
        orders = [
            cls.period for _, _, cls in elements.values() if cls.period is not None
        ]
        return GroupResult(
            GroupClass.FINITE_CYCLIC,
            order=lcm(*orders) if orders else 1,
            element_count=len(elements),
            compositions=compositions,
            notes=notes,
        )
    return GroupResult(
        GroupClass.UNDETERMINED,
        element_count=len(elements),
        compositions=compositions,
        reason="word budget exhausted before the group closed",
        notes=notes,
    )


def closed_orbit_criterion(result: GroupResult) -> str:
    """Abundance of closed orbits for the holonomy pseudogroup."""
    if result.classification is GroupClass.FINITE_CYCLIC:
        return "abundant"
    if result.classification in (GroupClass.WITNESS, GroupClass.CIRCLE_TYPE):
        return "scarce"
    return "undetermined"


ORBIT_EVIDENCE = ("none", "closed-off-origin", "non-recurrent")


@dataclass(frozen=True)
class OrbitRefinement:
    """A group classification refined by pseudo-orbit evidence.

    An orbit that closes off the origin (or an open, non-recurrent leaf
    through the transversal) forces the holonomy group to be finite.
    When the formal classification says circle type, the two readings
    cannot both hold; we keep the exact classification, set
    ``forced_finite``, and raise the ``contradiction`` flag so the
    caller can surface the conflict instead of silently picking a side.
    """

    group: GroupResult
    evidence: str
    forced_finite: bool
    contradiction: bool
    note: str | None = None


def refine_with_orbit_evidence(
    result: GroupResult, evidence: str = "none"
) -> OrbitRefinement:
    if evidence not in ORBIT_EVIDENCE:
        raise ValueError(f"unknown orbit evidence {evidence!r}")
    cls = result.classification
    if evidence == "none":
        return OrbitRefinement(
            result, evidence, cls is GroupClass.FINITE_CYCLIC, False
        )
    if cls is GroupClass.FINITE_CYCLIC:
        return OrbitRefinement(
            result, evidence, True, False,
            note="orbit evidence corroborates the finite cyclic reading",
        )
    if cls is GroupClass.CIRCLE_TYPE:
        return OrbitRefinement(
            result, evidence, True, True,
            note=(
                "an orbit closed off the origin forces a finite group, "
                "contradicting the circle-type multiplier"
            ),
        )
    if cls is GroupClass.WITNESS:
        # The witness is an exact jet computation; floating orbit
        # evidence cannot overturn it, only flag the tension.
        return OrbitRefinement(
            result, evidence, False, True,
            note=(
                "orbit evidence suggests closed leaves despite a "
                "certified witness of instability"
            ),
        )
    return OrbitRefinement(
        result, evidence, True, False,
        note="orbit evidence forces a finite group",
    )
