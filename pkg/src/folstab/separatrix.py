"""Darboux polynomials and separatrix sets.

Every reported member f is certified exactly: f divides X(f) in
K[x, y], and the quotient is stored as the cofactor.  Candidates come
from two routes.  Linear germs are solved by eigenvalue data alone,
with a conjugate quadratic form covering eigenvalues outside K.
Nonlinear germs are reduced; at each non-corner reduced point the
branch transverse to the divisor is computed as a graph with an exact
order-by-order recursion (the denominators a01 + k b10 never vanish at
reduced points), blown down along the chart path, and implicitized by
exact linear algebra before the divisibility check.

The `complete` flag is honest: it drops to False whenever a branch
could not be certified within the degree bound, an eigendirection
leaves the field, or a dicritical linear part makes the set infinite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classify import _eigenvector
from .errors import NotSingular
from .field import KElement
from .linalg import kernel_basis
from .poly import OneFormGerm, SparsePoly
from .tree import ReductionTree, reduce_singularities


@dataclass
class Separatrix:
    poly: SparsePoly
    cofactor: SparsePoly
    source: str


@dataclass
class SeparatrixSet:
    members: list[Separatrix]
    complete: bool
    notes: list[str] = field(default_factory=list)

    def polys(self) -> list[SparsePoly]:
        return [m.poly for m in self.members]


def _monic(p: SparsePoly) -> SparsePoly:
    return p.scale(p.leading_coefficient().inverse())


def _verify(germ: OneFormGerm, f: SparsePoly) -> SparsePoly | None:
    """Cofactor X(f)/f when f is an exact Darboux polynomial."""
    xf = germ.lie_derivative(f)
    if xf.is_zero():
        return SparsePoly.zero(germ.d)
    return xf.exact_div(f)


def _transverse_branch(germ: OneFormGerm, jet_order: int) -> SparsePoly:
    """Branch y = psi(x) transverse to the invariant axis {x = 0}.

    Assumes x | B (the axis is invariant), which kills the b01 slot and
    leaves the solvable denominators a01 + k b10.
    """
    A, B = germ.A, germ.B
    d = germ.d
    a01 = A.coefficient(0, 1)
    b10 = B.coefficient(1, 0)
    x = SparsePoly.x(d)
    psi = SparsePoly.zero(d)
    for k in range(1, jet_order + 1):
        resid = A.substitute(x, psi) + B.substitute(x, psi) * psi.dx()
        den = a01 + k * b10
        if den.is_zero():
            raise AssertionError("integer eigenvalue ratio at a reduced point")
        psi = psi - SparsePoly.monomial(d, k, 0, resid.coefficient(k, 0) / den)
    return psi


def _swap(germ: OneFormGerm) -> OneFormGerm:
    return OneFormGerm(germ.B.swap_xy(), germ.A.swap_xy())


def _blow_down(xt: SparsePoly, yt: SparsePoly, chart_path, trust: int):
    """Push a parametrized branch back through the chart path."""
    for chart, shift in reversed(chart_path):
        if chart == "u":
            xt, yt = xt, (xt * (yt + shift)).truncate(trust)
        else:
            xt, yt = (xt * yt).truncate(trust), yt
    return xt, yt


def _implicitize(germ, xt, yt, degree_bound, trust, source):
    """Smallest-degree certified Darboux polynomial through the branch."""
    d = germ.d
    powx = {0: SparsePoly.constant(d, 1)}
    powy = {0: SparsePoly.constant(d, 1)}

    def pw(cache, base, n):
        if n not in cache:
            cache[n] = (pw(cache, base, n - 1) * base).truncate(trust)
        return cache[n]

    for bound in range(1, degree_bound + 1):
        monos = [
            (a, b)
            for total in range(bound + 1)
            for a in range(total + 1)
            for b in (total - a,)
            if total > 0
        ]
        rows = [
            [
                (pw(powx, xt, a) * pw(powy, yt, b)).truncate(trust).coefficient(t, 0)
                for a, b in monos
            ]
            for t in range(trust + 1)
        ]
        for vec in kernel_basis(rows, len(monos), d):
            f = SparsePoly(d)
            for (a, b), c in zip(monos, vec):
                f = f + SparsePoly.monomial(d, a, b, c)
            if f.is_zero():
                continue
            f = _monic(f)
            cof = _verify(germ, f)
            if cof is not None:
                return Separatrix(f, cof, source)
    return None


def _linear_route(germ: OneFormGerm, out, notes) -> bool:
    (p, q), (r, s) = germ.jacobian()
    d = germ.d
    if q.is_zero() and r.is_zero() and p == s:
        for f in (SparsePoly.x(d), SparsePoly.y(d)):
            cof = _verify(germ, f)
            if cof is not None:
                out.append(Separatrix(f, cof, "linear"))
        notes.append(
            "radial linear part: every line through the origin is invariant"
        )
        return False
    trace, det = p + s, p * s - q * r
    disc = (trace * trace - 4 * det).sqrt()
    if disc is None:
        conic = (
            SparsePoly.monomial(d, 2, 0, r)
            + SparsePoly.monomial(d, 1, 1, s - p)
            - SparsePoly.monomial(d, 0, 2, q)
        )
        cof = _verify(germ, _monic(conic))
        assert cof is not None
        out.append(Separatrix(_monic(conic), cof, "linear"))
        return True
    half = KElement(d, 1) / 2
    mus = [(trace + disc) * half, (trace - disc) * half]
    if mus[0] == mus[1]:
        mus = mus[:1]
    for mu in mus:
        v = _eigenvector((p, q, r, s), mu, d)
        line = SparsePoly.monomial(d, 1, 0, v[1]) - SparsePoly.monomial(d, 0, 1, v[0])
        line = _monic(line)
        cof = _verify(germ, line)
        assert cof is not None
        out.append(Separatrix(line, cof, "linear"))
    return True


def _origin_branches(germ, out, notes, degree_bound, jet_order) -> bool:
    """Branches at a reduced origin that needed no blow-up."""
    (p, q), (r, s) = germ.jacobian()
    d = germ.d
    trace, det = p + s, p * s - q * r
    disc = (trace * trace - 4 * det).sqrt()
    if disc is None:
        notes.append("origin: eigendirections leave the field")
        return False
    half = KElement(d, 1) / 2
    complete = True
    mus = [(trace + disc) * half, (trace - disc) * half]
    vs = [_eigenvector((p, q, r, s), mu, d) for mu in mus]
    for i, mu in enumerate(mus):
        v, w = vs[i], vs[1 - i]
        g2 = germ.linear_change(((v[0], w[0]), (v[1], w[1])))
        psi = _transverse_branch(g2, jet_order)
        t = SparsePoly.x(d)
        bx, by = t, psi  # in g2 coordinates: tangent to the first axis
        xt = (bx.scale(v[0]) + by.scale(w[0])).truncate(jet_order)
        yt = (bx.scale(v[1]) + by.scale(w[1])).truncate(jet_order)
        sep = _implicitize(
            germ, xt, yt, degree_bound, jet_order, f"origin branch {i}"
        )
        if sep is None:
            notes.append(
                f"origin branch {i}: no certified polynomial curve within "
                f"degree {degree_bound}"
            )
            complete = False
        else:
            out.append(sep)
    return complete


def find_darboux_polynomials(
    germ: OneFormGerm,
    degree_bound: int = 6,
    jet_order: int = 20,
    max_blowups: int = 64,
    tree: ReductionTree | None = None,
) -> SeparatrixSet:
    if not germ.is_singular():
        raise NotSingular("the origin is a regular point of the saturated form")
    raw: list[Separatrix] = []
    notes: list[str] = []
    complete = True
    if germ.A.degree() <= 1 and germ.B.degree() <= 1:
        complete = _linear_route(germ, raw, notes)
    else:
        if tree is None:
            tree = reduce_singularities(germ, max_blowups=max_blowups)
        if tree.blowups == 0:
            complete = _origin_branches(germ, raw, notes, degree_bound, jet_order)
        else:
            for rp in tree.reduced_points:
                if rp.is_corner:
                    continue
                axis = next(iter(rp.on_components))
                local = rp.germ if axis == "x" else _swap(rp.germ)
                psi = _transverse_branch(local, jet_order)
                t = SparsePoly.x(germ.d)
                bx, by = (t, psi) if axis == "x" else (psi, t)
                xt, yt = _blow_down(bx, by, rp.chart_path, jet_order)
                sep = _implicitize(
                    germ, xt, yt, degree_bound, jet_order, rp.label
                )
                if sep is None:
                    notes.append(
                        f"{rp.label}: no certified polynomial branch within "
                        f"degree {degree_bound}"
                    )
                    complete = False
                else:
                    raw.append(sep)
    members: dict[SparsePoly, Separatrix] = {}
    for sep in raw:
        if sep.poly not in members:
            members[sep.poly] = sep
    ordered = sorted(
        members.values(), key=lambda s: (s.poly.degree(), str(s.poly))
    )
    return SeparatrixSet(ordered, complete, notes)
