"""The L-stability dichotomy, decided over the reduction tree.

A singular germ is L-stable when every leaf near the singularity stays
in a neighbourhood of it; for a non-dicritical germ this pins the
foliation down to one of two pictures: a holomorphic first integral, or
a real logarithmic foliation around the separatrix set.  The decision
ladder below turns the exact local data of the reduced points into one
of four verdicts:

  NotLStable                a certified local obstruction: a
                            saddle-node, a non-real eigenvalue ratio,
                            or a resonance with a nonvanishing
                            obstruction coefficient.
  FirstIntegralCandidate    every ratio is negative rational and every
                            resonance linearizes through the working
                            jet; the integral itself is attached when
                            the Darboux search assembles one.
  RealLogarithmic           a real irrational ratio occurs and the
                            certified separatrices carry a unique
                            logarithmic model with real residues.
  Indeterminate             the evidence is incomplete (separatrix
                            search exhausted its degree bound, ambiguous
                            cofactor kernel, eigenvalues outside the
                            working field) and no certificate either
                            way; never a guess.

Everything feeding a verdict is exact; conditional verdicts say so and
name the points the condition lives at.  Holonomy pseudogroup evidence
refines a verdict monotonically: it never walks a first-integral
verdict back to the logarithmic side, it only sharpens the undecided
ones or corroborates (or contradicts, with a flag) the decided ones.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field, replace

from .classify import (
    Classification,
    LinearizeResult,
    SingKind,
    classify_singularity,
    formal_linearize,
)
from .errors import AmbiguousKernel
from .field import KElement
from .germs import (
    FormalGerm,
    GroupClass,
    GroupResult,
    OrbitRefinement,
    classify_group,
    holonomy_multiplier,
    refine_with_orbit_evidence,
)
from .logmodel import FirstIntegralResult, LogModel, first_integral_search
from .poly import OneFormGerm
from .ratio import RatioClass
from .separatrix import SeparatrixSet, find_darboux_polynomials
from .tree import ReducedPoint, ReductionTree, camacho_sad_index, reduce_singularities

SIEGEL_CAVEAT = "conditional on analytic linearizability at Siegel irrational points"

log = logging.getLogger("folstab.pipeline")


class _Stage:
    """Context manager logging one pipeline stage with its wall time."""

    def __init__(self, name: str):
        self.name = name

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        ms = (time.perf_counter() - self.t0) * 1e3
        log.info("stage %s: %.1f ms", self.name, ms)
        return False


@dataclass
class PointReport:
    label: str
    point: ReducedPoint
    classification: Classification
    linearize: LinearizeResult | None = None


@dataclass
class ComponentHolonomy:
    """Holonomy of a divisor component, at multiplier level.

    One rotation number per singular point on the component (the index
    of the component's axis there), composed abelian-ly; the exact sum
    of the indices is checked against the self-intersection number.
    """

    cid: int
    indices: dict[str, KElement]
    index_sum: KElement
    self_intersection: int
    group: GroupResult

    @property
    def index_theorem_ok(self) -> bool:
        return self.index_sum == KElement(self.index_sum.d, self.self_intersection)


@dataclass
class StabilityVerdict:
    kind: str  # "NotLStable" | "FirstIntegralCandidate" | "RealLogarithmic" | "Indeterminate"
    reasons: list[str]
    conditional: bool = False
    witness: dict | None = None
    first_integral: object | None = None  # SparsePoly when constructed
    integral_mode: str | None = None  # "exact" | "formal-evidence" | "holonomy-evidence"
    certification_order: int | None = None
    residues: list[KElement] | None = None
    caveats: list[str] = field(default_factory=list)
    siegel_points: list[str] = field(default_factory=list)
    contradiction: bool = False
    notes: list[str] = field(default_factory=list)


@dataclass
class Analysis:
    germ: OneFormGerm
    tree: ReductionTree
    points: list[PointReport]
    separatrices: SeparatrixSet | None
    model: LogModel | None
    integral: FirstIntegralResult | None
    components: list[ComponentHolonomy]
    verdict: StabilityVerdict


def _ratio_str(cls: Classification) -> str:
    r = cls.ratio
    if r is None:
        return "?"
    if r.value is not None:
        return str(r.value)
    B, C = r.quad
    return f"root of r^2 + ({B})*r + ({C})"


def component_holonomy(tree: ReductionTree) -> list[ComponentHolonomy]:
    """Multiplier-level holonomy descriptor of every divisor component."""
    out = []
    for comp in tree.components:
        indices: dict[str, KElement] = {}
        germs = []
        for p in tree.points_on(comp.cid):
            axis = next(ax for ax, c in p.on_components.items() if c == comp.cid)
            idx = camacho_sad_index(p.germ, axis)
            indices[p.label] = idx
            germs.append(FormalGerm(tree.d, holonomy_multiplier(idx)))
        total = KElement(tree.d)
        for v in indices.values():
            total = total + v
        out.append(
            ComponentHolonomy(
                comp.cid, indices, total, comp.self_intersection,
                classify_group(germs),
            )
        )
    return out


def decide_l_stability(
    germ: OneFormGerm,
    *,
    jet_order: int = 20,
    max_blowups: int = 64,
    degree_bound: int = 6,
    tree: ReductionTree | None = None,
    separatrices: SeparatrixSet | None = None,
    holonomy: GroupResult | OrbitRefinement | None = None,
    orbit_evidence: str = "none",
) -> Analysis:
    """Run the decision ladder and return the full analysis bundle.

    Errors of the reduction itself (Dicritical, NonRepresentablePoint,
    MaxBlowupsExceeded, NotSingular) propagate: they are statements
    about the input, not verdicts.  An ambiguous cofactor kernel is
    caught and downgrades the verdict to Indeterminate.
    """
    if tree is None:
        with _Stage("reduce"):
            tree = reduce_singularities(germ, max_blowups=max_blowups)
        log.info(
            "reduction: %d blow-ups, %d components, %d reduced points",
            tree.blowups, len(tree.components), len(tree.reduced_points),
        )

    points = []
    with _Stage("classify"):
        for rp in tree.reduced_points:
            cls = classify_singularity(rp.germ, jet_order=jet_order)
            if cls.kind is SingKind.NOT_REDUCED:
                raise AssertionError(f"reduction left an unreduced point at {rp.label}")
            points.append(PointReport(rp.label, rp, cls))

    verdict = None

    saddle = [p for p in points if p.classification.kind is SingKind.SADDLE_NODE]
    if saddle:
        w = saddle[0]
        verdict = StabilityVerdict(
            "NotLStable",
            [f"saddle-node at {p.label}" for p in saddle],
            witness={
                "kind": "saddle-node",
                "point": w.label,
                "p": w.classification.saddle_p,
                "weak_index": None
                if w.classification.saddle_lambda is None
                else str(w.classification.saddle_lambda),
            },
        )

    def ratio_class(p):
        return p.classification.ratio_info.ratio_class

    nondeg = [p for p in points if p.classification.kind is SingKind.NON_DEGENERATE]
    if verdict is None:
        nonreal = [p for p in nondeg if ratio_class(p) is RatioClass.NON_REAL]
        if nonreal:
            w = nonreal[0]
            verdict = StabilityVerdict(
                "NotLStable",
                [f"non-real eigenvalue ratio at {p.label}" for p in nonreal],
                witness={
                    "kind": "non-real-ratio",
                    "point": w.label,
                    "ratio": _ratio_str(w.classification),
                },
            )

    resonant = [p for p in nondeg if ratio_class(p) is RatioClass.NEGATIVE_RATIONAL]
    irrational = [p for p in nondeg if ratio_class(p) is RatioClass.REAL_IRRATIONAL]
    assert not any(ratio_class(p) is RatioClass.POSITIVE_RATIONAL for p in nondeg)

    if verdict is None:
        with _Stage("linearize"):
            for p in resonant:
                p.linearize = formal_linearize(p.point.germ, jet_order=jet_order)
        obstructed = [p for p in resonant if p.linearize.status == "obstructed"]
        if obstructed:
            w = obstructed[0]
            verdict = StabilityVerdict(
                "NotLStable",
                [
                    f"nonlinearizable resonance at {p.label}"
                    f" (obstruction at order {p.linearize.obstruction_order})"
                    for p in obstructed
                ],
                witness={
                    "kind": "resonant-obstruction",
                    "point": w.label,
                    "ratio": str(w.linearize.ratio),
                    "order": w.linearize.obstruction_order,
                    "monomial": list(w.linearize.obstruction_monomial),
                },
            )

    seps = separatrices
    model = None
    integral = None
    ambiguous = None
    if verdict is None:
        if seps is None:
            with _Stage("separatrix"):
                seps = find_darboux_polynomials(
                    germ,
                    degree_bound=degree_bound,
                    jet_order=jet_order,
                    max_blowups=max_blowups,
                    tree=tree,
                )
        try:
            with _Stage("logarithmic"):
                integral = first_integral_search(germ, seps)
            model = integral.model
        except AmbiguousKernel as exc:
            ambiguous = exc

    if verdict is None and not irrational:
        outside = [p for p in resonant if p.linearize.status == "eigenvalues-outside-field"]
        if integral is not None and integral.status == "integral":
            verdict = StabilityVerdict(
                "FirstIntegralCandidate",
                [
                    "every reduced point has a negative rational eigenvalue ratio",
                    "an exact polynomial first integral certifies the Darboux data",
                ],
                first_integral=integral.integral,
                integral_mode="exact",
                certification_order=jet_order,
                residues=model.residues,
                notes=[
                    f"eigenvalues at {p.label} leave the working field; "
                    "the exact integral decides regardless"
                    for p in outside
                ],
            )
        elif outside or ambiguous is not None:
            reasons = []
            if ambiguous is not None:
                reasons.append(
                    f"the cofactor kernel has dimension {ambiguous.dimension}; "
                    "no unique logarithmic model"
                )
            reasons += [
                f"eigenvalues at {p.label} leave the working field" for p in outside
            ]
            reasons.append("no exact first integral within the degree bound")
            verdict = StabilityVerdict(
                "Indeterminate",
                reasons,
                notes=["a larger field parameter d may split the eigenvalues"]
                if outside
                else [],
            )
        else:
            notes = []
            if integral is not None and integral.status == "meromorphic":
                notes.append(
                    "mixed-sign residues give a meromorphic Darboux quotient, "
                    "not a holomorphic integral"
                )
            if seps is not None and not seps.complete:
                notes.append("separatrix search incomplete within the degree bound")
            verdict = StabilityVerdict(
                "FirstIntegralCandidate",
                [
                    "every reduced point has a negative rational eigenvalue ratio",
                    f"every resonance linearizes through order {jet_order}",
                ],
                integral_mode="formal-evidence",
                certification_order=jet_order,
                conditional=True,
                notes=notes + ["first integral exists if the holonomy is finite; "
                               "not constructed within the degree bound"],
            )

    if verdict is None:
        # a real irrational ratio is present: the logarithmic side
        siegel = [
            p.label for p in irrational if p.classification.ratio_info.is_siegel
        ]
        if model is not None and model.residues_real():
            verdict = StabilityVerdict(
                "RealLogarithmic",
                [
                    "real irrational eigenvalue ratio at "
                    + ", ".join(p.label for p in irrational),
                    "unique logarithmic model with real residues",
                ],
                conditional=bool(siegel),
                residues=model.residues,
                caveats=[SIEGEL_CAVEAT] if siegel else [],
                siegel_points=siegel,
            )
        else:
            reasons = []
            if ambiguous is not None:
                reasons.append(
                    f"the cofactor kernel has dimension {ambiguous.dimension}; "
                    "no unique logarithmic model"
                )
            elif model is None:
                reasons.append("no logarithmic model over the certified separatrices")
            else:
                reasons.append("logarithmic model residues are not all real")
            notes = []
            if seps is not None and not seps.complete:
                reasons.append("separatrix search incomplete within the degree bound")
                notes.extend(seps.notes)
            verdict = StabilityVerdict(
                "Indeterminate", reasons, siegel_points=siegel, notes=notes
            )

    if holonomy is not None:
        verdict = apply_holonomy_evidence(verdict, holonomy, orbit_evidence)

    with _Stage("holonomy-descriptors"):
        components = component_holonomy(tree)
    log.info("verdict: %s%s", verdict.kind, " (conditional)" if verdict.conditional else "")

    return Analysis(germ, tree, points, seps, model, integral, components, verdict)


def apply_holonomy_evidence(
    verdict: StabilityVerdict,
    group: GroupResult | OrbitRefinement,
    orbit_evidence: str = "none",
) -> StabilityVerdict:
    """Refine a verdict with holonomy pseudogroup evidence, monotonically.

    A witness of instability promotes Indeterminate or RealLogarithmic
    to NotLStable; a finite group (certified, or forced by an orbit
    closed off the origin) promotes Indeterminate toward
    FirstIntegralCandidate and flags a RealLogarithmic verdict as
    contradicted while promoting it.  A FirstIntegralCandidate never
    moves to RealLogarithmic and a decided NotLStable never softens;
    conflicting evidence sets the contradiction flag instead.
    """
    ref = (
        group
        if isinstance(group, OrbitRefinement)
        else refine_with_orbit_evidence(group, orbit_evidence)
    )
    g = ref.group
    notes = list(verdict.notes)
    if ref.note is not None:
        notes.append("holonomy: " + ref.note)

    if g.classification is GroupClass.WITNESS:
        word, wcls = g.witness
        reason = f"holonomy witness {word}: {wcls.kind.value}"
        witness = {
            "kind": "holonomy-element",
            "word": word,
            "class": wcls.kind.value,
            "through_order": wcls.through_order,
        }
        if wcls.flat_order is not None:
            witness["flat_order"] = wcls.flat_order
        if verdict.kind in ("Indeterminate", "RealLogarithmic"):
            return replace(
                verdict,
                kind="NotLStable",
                reasons=verdict.reasons + [reason],
                conditional=False,
                caveats=[],
                witness=witness,
                contradiction=verdict.contradiction or ref.contradiction,
                notes=notes,
            )
        if verdict.kind == "FirstIntegralCandidate":
            return replace(
                verdict,
                contradiction=True,
                notes=notes + [reason + " contradicts the first-integral evidence"],
            )
        return replace(verdict, reasons=verdict.reasons + [reason], notes=notes)

    if ref.forced_finite:
        reason = "holonomy evidence: closed orbits abundant, the group reads finite"
        if verdict.kind == "Indeterminate":
            return replace(
                verdict,
                kind="FirstIntegralCandidate",
                integral_mode="holonomy-evidence",
                conditional=True,
                reasons=verdict.reasons + [reason],
                contradiction=verdict.contradiction or ref.contradiction,
                notes=notes,
            )
        if verdict.kind == "RealLogarithmic":
            return replace(
                verdict,
                kind="FirstIntegralCandidate",
                integral_mode="holonomy-evidence",
                conditional=True,
                contradiction=True,
                reasons=verdict.reasons + [reason],
                notes=notes
                + ["finite holonomy contradicts the irrational logarithmic model"],
            )
        if verdict.kind == "NotLStable":
            return replace(
                verdict,
                contradiction=True,
                notes=notes + [reason + " despite a certified obstruction"],
            )
        return replace(verdict, notes=notes + [reason])

    if (
        g.classification is GroupClass.CIRCLE_TYPE
        and verdict.kind == "FirstIntegralCandidate"
    ):
        return replace(
            verdict,
            contradiction=True,
            notes=notes
            + ["holonomy evidence: a circle-type group has no abundant closed "
               "orbits, contradicting the first-integral evidence"],
        )
    return replace(
        verdict,
        contradiction=verdict.contradiction or ref.contradiction,
        notes=notes + [f"holonomy evidence: {g.classification.value}"],
    )


def verify_witness(tree: ReductionTree, witness: dict) -> bool:
    """Re-run the single falsifying check a NotLStable witness names.

    Works from the reduction tree and the witness dict alone, so a
    reported obstruction can be checked in isolation.
    """
    kind = witness["kind"]
    if kind == "holonomy-element":
        raise ValueError(
            "holonomy witnesses carry their certificate in the group result"
        )
    point = next(p for p in tree.reduced_points if p.label == witness["point"])
    if kind == "saddle-node":
        cls = classify_singularity(point.germ)
        return cls.kind is SingKind.SADDLE_NODE and cls.saddle_p == witness["p"]
    if kind == "non-real-ratio":
        cls = classify_singularity(point.germ)
        return (
            cls.kind is SingKind.NON_DEGENERATE
            and cls.ratio_info.ratio_class is RatioClass.NON_REAL
            and _ratio_str(cls) == witness["ratio"]
        )
    if kind == "resonant-obstruction":
        lin = formal_linearize(point.germ, jet_order=witness["order"] + 1)
        return (
            lin.status == "obstructed"
            and lin.obstruction_order == witness["order"]
            and list(lin.obstruction_monomial) == witness["monomial"]
        )
    raise ValueError(f"unknown witness kind {kind!r}")
