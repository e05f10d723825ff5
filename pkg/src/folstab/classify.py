"""Classification of singular points and formal linearization.

A reduced point is either nondegenerate (two nonzero eigenvalues,
ratio outside Q+) or a saddle-node (exactly one nonzero eigenvalue).
For saddle-nodes the weak multiplicity p and, when the jet order
allows, the formal modulus lambda are computed by straightening the pol
formal center manifold and reading a residue; lambda equals the
Camacho-Sad index of the weak separatrix.

`formal_linearize` builds an orbital conjugacy h = id + h.o.t. to the
linear model x dy - r y dx degree by degree, driving the wedge
(h1 dh2 - r h2 dh1) ^ omega to zero.  Each wedge monomial x^a y^b of
degree k+1 constrains the two map coefficients h1[a, b-1], h2[a-1, b]
with factors
    c1 = r (1 - a - r (b - 1)),      c2 = a - 1 + r (b - 1),
which vanish together exactly at the resonant slots a = 1 + n s,
b = 1 + m s of a rational ratio r = -n/m; a nonzero wedge coefficient
there is a certified obstruction to formal orbital linearization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import JetOrderInsufficient
from .field import KElement
from .poly import OneFormGerm, SparsePoly
from .ratio import AlgebraicRatio, RatioClass, RatioInfo


class SingKind(Enum):
    NON_DEGENERATE = "non-degenerate"
    SADDLE_NODE = "saddle-node"
    NOT_REDUCED = "not-reduced"


@dataclass
class Classification:
    kind: SingKind
    ratio: AlgebraicRatio | None = None
    ratio_info: RatioInfo | None = None
    eigenvalues: tuple[KElement, KElement] | None = None
    saddle_p: int | None = None
    saddle_lambda: KElement | None = None
    not_reduced_reason: str | None = None
    notes: list[str] = field(default_factory=list)


def _eigenvalues_in_K(trace: KElement, det: KElement):
    s = (trace * trace - 4 * det).sqrt()
    if s is None:
        return None
    return ((trace + s)._scale(Fraction(1, 2)), (trace - s)._scale(Fraction(1, 2)))


def classify_singularity(germ: OneFormGerm, jet_order: int = 20) -> Classification:
    (j00, j01), (j10, j11) = germ.jacobian()
    det = j00 * j11 - j01 * j10
    trace = j00 + j11
    if not det.is_zero():
        ratio = AlgebraicRatio.from_matrix(trace, det)
        info = ratio.classify()
        if info.ratio_class is RatioClass.POSITIVE_RATIONAL:
            return Classification(
                SingKind.NOT_REDUCED,
                ratio=ratio,
                ratio_info=info,
                not_reduced_reason=f"eigenvalue ratio {info.as_fraction} in Q+",
            )
        return Classification(
            SingKind.NON_DEGENERATE,
            ratio=ratio,
            ratio_info=info,
            eigenvalues=_eigenvalues_in_K(trace, det),
        )
    if trace.is_zero():
        zero = all(v.is_zero() for v in (j00, j01, j10, j11))
        reason = "zero linear part" if zero else "nilpotent linear part"
        return Classification(SingKind.NOT_REDUCED, not_reduced_reason=reason)
    p, lam, notes = _saddle_node_data(germ, (j00, j01, j10, j11), trace, jet_order)
    return Classification(
        SingKind.SADDLE_NODE,
        eigenvalues=(trace, KElement(germ.d)),
        saddle_p=p,
        saddle_lambda=lam,
        notes=notes,
    )


def _eigenvector(j, mu: KElement, d: int):
    """Kernel vector of J - mu, monic in its first nonzero coordinate."""
    j00, j01, j10, j11 = j
    a, b = j00 - mu, j01
    if not (a.is_zero() and b.is_zero()):
        v = (-b, a)
    else:
        c, e = j10, j11 - mu
        if c.is_zero() and e.is_zero():
            return (KElement(d, 1), KElement(d))
        v = (-e, c)
    s = (v[0] if not v[0].is_zero() else v[1]).inverse()
    return (v[0] * s, v[1] * s)


def _saddle_node_data(germ, j, trace, jet_order):
    d = germ.d
    vw = _eigenvector(j, KElement(d), d)  # kernel direction
    vs = _eigenvector(j, trace, d)
    g2 = germ.linear_change(((vw[0], vs[0]), (vw[1], vs[1])))
    P, Q = g2.to_vector_field()
    mu = Q.coefficient(0, 1)
    x = SparsePoly.x(d)

    # formal center manifold y = phi(x): Q(x, phi) = phi' P(x, phi)
    phi = SparsePoly.zero(d)
    for k in range(2, jet_order + 1):
        resid = Q.substitute(x, phi) - phi.dx() * P.substitute(x, phi)
        phi = phi - SparsePoly.monomial(d, k, 0, resid.coefficient(k, 0) / mu)
    restricted = P.substitute(x, phi).truncate(jet_order)
    if restricted.is_zero():
        raise JetOrderInsufficient(
            "restriction to the center manifold vanishes through the jet order",
            order=jet_order,
        )
    p = restricted.order() - 1
    notes: list[str] = []
    if jet_order < 2 * p + 1:
        return p, None, [
            f"jet order {jet_order} below 2p+1 = {2 * p + 1}: formal modulus skipped"
        ]
    # straighten the center manifold and read the residue of
    # (dQ/dy)(x, 0) / P(x, 0), the weak-separatrix index
    A3, B3 = g2.pullback_components(x, SparsePoly.y(d) + phi)
    D = B3.subs_y(0)
    N = (-A3).dy().subs_y(0)
    dn = [D.coefficient(k, 0) for k in range(p + 1, 2 * p + 2)]
    nn = [N.coefficient(k, 0) for k in range(p + 1)]
    inv = [dn[0].inverse()]
    for n in range(1, p + 1):
        acc = KElement(d)
        for t in range(1, n + 1):
            acc = acc + dn[t] * inv[n - t]
        inv.append(-acc * inv[0])
    lam = KElement(d)
    for t in range(p + 1):
        lam = lam + nn[t] * inv[p - t]
    return p, lam, notes


def is_generalized_curve(classifications) -> bool:
    """True when no reduced point is a saddle-node."""
    return all(c.kind is not SingKind.SADDLE_NODE for c in classifications)


# -- formal orbital linearization -------------------------------------


@dataclass
class LinearizeResult:
    status: str  # "linearized" | "obstructed" | "eigenvalues-outside-field"
    jet_order: int
    ratio: KElement | None = None
    map: tuple[SparsePoly, SparsePoly] | None = None
    obstruction_order: int | None = None
    obstruction_monomial: tuple[int, int] | None = None
    resonant: bool = False


def formal_linearize(germ: OneFormGerm, jet_order: int = 20) -> LinearizeResult:
    """Certificate of formal orbital linearizability through a jet.

    Applies to nondegenerate points with eigenvalue ratio outside Q+.
    On success the returned map (f, g) satisfies
        (f dg - r g df) ^ omega = 0
    through total degree jet_order + 1, with omega the input germ and
    r the eigenvalue ratio; its linear part is invertible.
    """
    (j00, j01), (j10, j11) = germ.jacobian()
    det = j00 * j11 - j01 * j10
    trace = j00 + j11
    if det.is_zero():
        raise ValueError("linearization needs two nonzero eigenvalues")
    d = germ.d
    eig = _eigenvalues_in_K(trace, det)
    if eig is None:
        return LinearizeResult("eigenvalues-outside-field", jet_order)
    mu1, mu2 = eig
    lam = mu2 / mu1
    info = AlgebraicRatio.from_value(lam).classify()
    if info.ratio_class is RatioClass.POSITIVE_RATIONAL:
        raise ValueError("eigenvalue ratio in Q+ is not a reduced configuration")
    v1 = _eigenvector((j00, j01, j10, j11), mu1, d)
    v2 = _eigenvector((j00, j01, j10, j11), mu2, d)
    g2 = germ.linear_change(((v1[0], v2[0]), (v1[1], v2[1])))
    lc = g2.B.coefficient(1, 0)
    A = g2.A.scale(lc.inverse())
    B = g2.B.scale(lc.inverse())
    # model position: A = -lam y + ..., B = x + ...
    assert A.coefficient(0, 1) == -lam

    resonant = info.ratio_class is RatioClass.NEGATIVE_RATIONAL
    h1 = SparsePoly.x(d)
    h2 = SparsePoly.y(d)
    for k in range(2, jet_order + 1):
        cut = k + 1
        eta_p = h1.mul_truncated(h2.dx(), cut) - h2.mul_truncated(h1.dx(), cut).scale(lam)
        eta_q = h1.mul_truncated(h2.dy(), cut) - h2.mul_truncated(h1.dy(), cut).scale(lam)
        w = eta_p.mul_truncated(B, cut) - eta_q.mul_truncated(A, cut)
        for a in range(cut + 1):
            b = cut - a
            val = w.coefficient(a, b)
            if val.is_zero():
                continue
            c1 = lam * (1 - a - lam * (b - 1))
            c2 = KElement(d, a - 1) + lam * (b - 1)
            if b >= 1 and not c1.is_zero():
                h1 = h1 - SparsePoly.monomial(d, a, b - 1, val / c1)
            elif a >= 1 and not c2.is_zero():
                h2 = h2 - SparsePoly.monomial(d, a - 1, b, val / c2)
            else:
                return LinearizeResult(
                    "obstructed",
                    jet_order,
                    ratio=lam,
                    obstruction_order=k,
                    obstruction_monomial=(a, b),
                    resonant=resonant,
                )
    # compose with the inverse linear change so the certificate applies
    # to the input germ directly
    det_m = v1[0] * v2[1] - v2[0] * v1[1]
    dm = det_m.inverse()
    xp, yp = SparsePoly.x(d), SparsePoly.y(d)
    l1 = xp.scale(v2[1] * dm) - yp.scale(v2[0] * dm)
    l2 = yp.scale(v1[0] * dm) - xp.scale(v1[1] * dm)
    return LinearizeResult(
        "linearized",
        jet_order,
        ratio=lam,
        map=(h1.substitute(l1, l2), h2.substitute(l1, l2)),
        resonant=resonant,
    )
