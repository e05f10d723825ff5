"""Reduction of singularities by iterated blow-ups, and the dual data
of the resulting divisor: components with self-intersections, reduced
points with their local germs, Camacho-Sad indices.

A point is reduced when its linear part has either two eigenvalues with
ratio outside the positive rationals, or exactly one nonzero eigenvalue
(saddle-node).  Ratio in Q+ (including 1) and nilpotent or zero linear
parts keep getting blown up; Seidenberg guarantees termination, the
`max_blowups` budget guards the implementation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blowup import blowup_once, divisor_singular_parameters
from .errors import Dicritical, MaxBlowupsExceeded, NonRepresentablePoint, NotSingular
from .field import KElement
from .poly import OneFormGerm, SparsePoly
from .ratio import AlgebraicRatio, RatioClass


@dataclass
class DivisorComponent:
    cid: int
    born_step: int
    self_intersection: int
    adjacent: list[int] = field(default_factory=list)

    @property
    def label(self) -> str:
        return f"D{self.cid}"


@dataclass
class ReducedPoint:
    pid: int
    germ: OneFormGerm
    chart_path: list[tuple[str, KElement]]
    on_components: dict[str, int]  # local axis ("x"/"y") -> component id
    classification: object | None = None

    @property
    def is_corner(self) -> bool:
        return len(self.on_components) == 2

    @property
    def label(self) -> str:
        return f"p{self.pid}"


@dataclass
class ReductionTree:
    d: int
    original: OneFormGerm
    components: list[DivisorComponent]
    reduced_points: list[ReducedPoint]
    blowups: int

    def component(self, cid: int) -> DivisorComponent:
        return self.components[cid - 1]

    def points_on(self, cid: int) -> list[ReducedPoint]:
        return [p for p in self.reduced_points if cid in p.on_components.values()]


def point_is_reduced(germ: OneFormGerm) -> bool:
    (j00, j01), (j10, j11) = germ.jacobian()
    det = j00 * j11 - j01 * j10
    trace = j00 + j11
    if not det.is_zero():
        info = AlgebraicRatio.from_matrix(trace, det).classify()
        return info.ratio_class is not RatioClass.POSITIVE_RATIONAL
    return not trace.is_zero()


def reduce_singularities(germ: OneFormGerm, max_blowups: int = 64) -> ReductionTree:
    if germ.multiplicity() < 1:
        raise NotSingular("the saturated form does not vanish at the origin")
    d = germ.d
    components: list[DivisorComponent] = []
    reduced: list[ReducedPoint] = []
    queue: list[tuple[OneFormGerm, list, dict]] = [(germ, [], {})]
    blowups = 0
    while queue:
        g, path, on_comp = queue.pop(0)
        if point_is_reduced(g):
            reduced.append(ReducedPoint(len(reduced), g, path, on_comp))
            continue
        if blowups >= max_blowups:
            raise MaxBlowupsExceeded(max_blowups)
        blowups += 1
        res = blowup_once(g)
        if res.dicritical:
            raise Dicritical(
                f"blow-up {blowups} is dicritical (non-invariant divisor)",
                step=blowups,
            )
        cids = sorted(set(on_comp.values()))
        for cid in cids:
            components[cid - 1].self_intersection -= 1
        if len(cids) == 2:
            # the corner blow-up separates the two components
            a, b = cids
            components[a - 1].adjacent.remove(b)
            components[b - 1].adjacent.remove(a)
        new = DivisorComponent(len(components) + 1, blowups, -1, adjacent=list(cids))
        for cid in cids:
            components[cid - 1].adjacent.append(new.cid)
        components.append(new)

        roots, v_origin, missing = divisor_singular_parameters(res)
        if missing:
            raise NonRepresentablePoint(
                f"singular directions of blow-up {blowups} outside the field: "
                + ", ".join(missing),
                factors=missing,
            )
        for v0, _mult in roots:
            child = res.u_chart.germ_at(v0)
            comp_map = {"x": new.cid}
            if v0.is_zero() and "y" in on_comp:
                comp_map["y"] = on_comp["y"]
            queue.append((child, path + [("u", v0)], comp_map))
        if v_origin:
            child = res.v_chart.germ_at(KElement(d))
            comp_map = {"y": new.cid}
            if "x" in on_comp:
                comp_map["x"] = on_comp["x"]
            queue.append((child, path + [("v", KElement(d))], comp_map))
    return ReductionTree(d, germ, components, reduced, blowups)


# -- Camacho-Sad indices ----------------------------------------------


def _dense_in_x(p: SparsePoly) -> list[KElement]:
    out = [KElement(p.d) for _ in range(p.degree_x() + 1)]
    for (a, b), v in p.c.items():
        if b != 0:
            raise ValueError("not univariate in x")
        out[a] = v
    return out


def camacho_sad_index(germ: OneFormGerm, axis: str) -> KElement:
    """Index of the invariant axis at the origin.

    For the curve {y = 0} this is the residue at x = 0 of
    (-dA/dy)(x, 0) / B(x, 0) dx, computed by exact series inversion;
    the {x = 0} case is reduced to it by swapping coordinates.
    """
    if axis == "x":
        germ = OneFormGerm(germ.B.swap_xy(), germ.A.swap_xy())
    elif axis != "y":
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    if not germ.A.subs_y(0).is_zero():
        raise ValueError("axis is not invariant for the germ")
    d = germ.d
    N = _dense_in_x((-germ.A).dy().subs_y(0))
    D = _dense_in_x(germ.B.subs_y(0))
    # saturation forbids y dividing both components, so D is nonzero
    k = 0
    while D[k].is_zero():
        k += 1
    if k == 0:
        return KElement(d)  # regular point of the curve
    Dhat = D[k:]
    inv = [Dhat[0].inverse()]
    for n in range(1, k):
        acc = KElement(d)
        for j in range(1, n + 1):
            if j < len(Dhat):
                acc = acc + Dhat[j] * inv[n - j]
        inv.append(-acc * inv[0])
    out = KElement(d)
    for j in range(k):
        if j < len(N):
            out = out + N[j] * inv[k - 1 - j]
    return out


def component_index_sum(tree: ReductionTree, cid: int) -> KElement:
    """Sum of Camacho-Sad indices of the reduced points on a component."""
    total = KElement(tree.d)
    for p in tree.points_on(cid):
        for axis, c in p.on_components.items():
            if c == cid:
                total = total + camacho_sad_index(p.germ, axis)
    return total


# -- rendering ---------------------------------------------------------


def to_dot(tree: ReductionTree, point_notes: dict[int, str] | None = None) -> str:
    """Dual graph of the divisor in DOT form, birth order preserved."""
    notes = point_notes or {}
    lines = ["graph reduction {", "  node [shape=box];"]
    for comp in sorted(tree.components, key=lambda c: c.born_step):
        lines.append(f'  D{comp.cid} [label="D{comp.cid} ({comp.self_intersection})"];')
    seen = set()
    for comp in sorted(tree.components, key=lambda c: c.born_step):
        for other in sorted(comp.adjacent):
            edge = (min(comp.cid, other), max(comp.cid, other))
            if edge not in seen:
                seen.add(edge)
                lines.append(f"  D{edge[0]} -- D{edge[1]};")
    for p in tree.reduced_points:
        note = notes.get(p.pid)
        label = f"{p.label}: {note}" if note else p.label
        lines.append(f'  {p.label} [shape=ellipse, label="{label}"];')
        for cid in sorted(set(p.on_components.values())):
            lines.append(f"  {p.label} -- D{cid};")
    lines.append("}")
    return "\n".join(lines) + "\n"
