from fractions import Fraction

import pytest

from folstab import KElement
from folstab.errors import Dicritical
from folstab.germs import (
    FormalGerm,
    Multiplier,
    classify_group,
    refine_with_orbit_evidence,
)
from folstab.poly import OneFormGerm, SparsePoly
from folstab.separatrix import Separatrix, SeparatrixSet
from folstab.verdict import (
    SIEGEL_CAVEAT,
    StabilityVerdict,
    apply_holonomy_evidence,
    decide_l_stability,
    verify_witness,
)


def X(d=1):
    return SparsePoly.x(d)


def Y(d=1):
    return SparsePoly.y(d)


def C(d, *q):
    return SparsePoly.constant(d, KElement(d, *q))


def linear(d, lam):
    # omega = x dy - lam y dx, dual to X = x dx + lam y dy
    return OneFormGerm(Y(d).scale(-lam), X(d))


SQRT2 = KElement(2, 0, 1)
SQRT3 = KElement(3, 0, 1)
I1 = KElement(1, 0, 0, 1)


# -- the linear case table ---------------------------------------------


@pytest.mark.parametrize(
    "d, lam, integral",
    [
        (1, KElement(1, -1), "x*y"),
        (1, KElement(1, Fraction(-2, 3)), "x^2*y^3"),
        (1, KElement(1, -5), "x^5*y"),
        (1, KElement(1, Fraction(-3, 7)), "x^3*y^7"),
    ],
)
def test_linear_rational_is_integrable(d, lam, integral):
    v = decide_l_stability(linear(d, lam)).verdict
    assert v.kind == "FirstIntegralCandidate"
    assert v.integral_mode == "exact"
    assert not v.conditional
    assert str(v.first_integral) == integral


@pytest.mark.parametrize(
    "lam",
    [I1, -I1, KElement(1, 1, 0, 1), KElement(1, 2, 0, -3)],
)
def test_linear_nonreal_is_unstable(lam):
    an = decide_l_stability(linear(1, lam))
    v = an.verdict
    assert v.kind == "NotLStable"
    assert v.witness["kind"] == "non-real-ratio"
    assert verify_witness(an.tree, v.witness)
    # the ladder stops before any separatrix work
    assert an.separatrices is None


@pytest.mark.parametrize(
    "d, lam, siegel",
    [
        (2, -SQRT2, True),
        (2, SQRT2, False),
        (3, -SQRT3, True),
        (5, KElement(5, Fraction(1, 2), Fraction(-1, 2)), True),
    ],
)
def test_linear_irrational_is_logarithmic(d, lam, siegel):
    v = decide_l_stability(linear(d, lam)).verdict
    assert v.kind == "RealLogarithmic"
    assert v.conditional is siegel
    assert v.siegel_points == (["p0"] if siegel else [])
    assert v.caveats == ([SIEGEL_CAVEAT] if siegel else [])
    assert v.residues is not None and len(v.residues) == 2


@pytest.mark.parametrize("lam", [1, 2])
def test_linear_positive_integer_is_dicritical(lam):
    with pytest.raises(Dicritical):
        decide_l_stability(linear(1, KElement(1, lam)))


def test_siegel_residues_sqrt2():
    v = decide_l_stability(linear(2, -SQRT2)).verdict
    # lam = -sqrt(2): residues proportional to (1, 1/sqrt(2))
    assert v.residues == [KElement(2, 1), KElement(2, 0, Fraction(1, 2))]


# -- nonlinear ladder rungs --------------------------------------------


def test_cusp_first_integral():
    germ = OneFormGerm(X() * X() * C(1, -3), Y().scale(2))
    an = decide_l_stability(germ)
    v = an.verdict
    assert v.kind == "FirstIntegralCandidate"
    assert v.integral_mode == "exact"
    assert str(v.first_integral) == "x^3 - y^2"
    assert v.residues == [KElement(1, 1)]
    assert an.tree.blowups == 3
    assert an.integral.exponents == [1]
    assert all(p.linearize.status == "linearized" for p in an.points)


def test_saddle_node_witness():
    # y^2 dx - x dy: saddle-node at the origin, p = 1
    an = decide_l_stability(OneFormGerm(Y() * Y(), -X()))
    v = an.verdict
    assert v.kind == "NotLStable"
    assert v.reasons == ["saddle-node at p0"]
    assert v.witness == {
        "kind": "saddle-node", "point": "p0", "p": 1, "weak_index": "0",
    }
    assert verify_witness(an.tree, v.witness)


def test_euler_reaches_saddle_node():
    # (x - y) dx + x^2 dy needs one blow-up to show its saddle-node
    an = decide_l_stability(OneFormGerm(X() - Y(), X() * X()))
    assert an.verdict.kind == "NotLStable"
    assert an.verdict.witness["kind"] == "saddle-node"
    assert verify_witness(an.tree, an.verdict.witness)


def test_resonant_obstruction_witness():
    # A = y - x y^2, B = x: ratio -1 with an order-3 obstruction
    an = decide_l_stability(OneFormGerm(Y() - X() * Y() * Y(), X()))
    v = an.verdict
    assert v.kind == "NotLStable"
    assert v.witness["kind"] == "resonant-obstruction"
    assert v.witness["order"] == 3
    assert v.witness["monomial"] == [2, 2]
    assert verify_witness(an.tree, v.witness)


def test_formal_evidence_upgrades_to_exact():
    # A = y + x^9, B = x: integral x^10 + 10xy lies beyond degree 6
    germ = OneFormGerm(Y() + X() ** 9, X())
    v6 = decide_l_stability(germ).verdict
    assert v6.kind == "FirstIntegralCandidate"
    assert v6.integral_mode == "formal-evidence"
    assert v6.conditional
    assert v6.first_integral is None
    assert v6.certification_order == 20
    v9 = decide_l_stability(germ, degree_bound=9).verdict
    assert v9.integral_mode == "exact"
    assert not v9.conditional
    assert str(v9.first_integral) == "x^10 + 10*x*y"


def test_indeterminate_upgrades_to_logarithmic():
    # A = sqrt(2) y + x^9, B = x: the second branch needs degree 9
    germ = OneFormGerm(Y(2).scale(SQRT2) + X(2) ** 9, X(2))
    v6 = decide_l_stability(germ).verdict
    assert v6.kind == "Indeterminate"
    assert any("incomplete" in r for r in v6.reasons)
    v9 = decide_l_stability(germ, degree_bound=9).verdict
    assert v9.kind == "RealLogarithmic"
    assert v9.conditional
    assert v9.siegel_points == ["p0"]
    assert v9.residues == [KElement(2, 1), KElement(2, 0, Fraction(1, 2))]


def test_weighted_lines_integral():
    # omega = (3xy + 2y^2) dx + (x^2 + 2xy) dy = d(x^2 y (x + y)) / x ... :
    # three invariant lines with exponents (2, 1, 1)
    germ = OneFormGerm(
        X() * Y() * C(1, 3) + Y() * Y() * C(1, 2),
        X() * X() + X() * Y() * C(1, 2),
    )
    an = decide_l_stability(germ)
    v = an.verdict
    assert v.kind == "FirstIntegralCandidate"
    assert str(v.first_integral) == "x^3*y + x^2*y^2"
    assert an.integral.exponents == [2, 1, 1]
    assert v.residues == [
        KElement(1, 1), KElement(1, Fraction(1, 2)), KElement(1, Fraction(1, 2)),
    ]


def test_ambiguous_kernel_is_indeterminate():
    # members x, y, xy of d(xy) have dependent cofactors
    germ = OneFormGerm(-Y(), -X())
    members = []
    for f in (X(), Y(), X() * Y()):
        q = germ.lie_derivative(f).exact_div(f)
        members.append(Separatrix(f, q if q is not None else SparsePoly.zero(1), "test"))
    seps = SeparatrixSet(members, True, [])
    v = decide_l_stability(germ, separatrices=seps).verdict
    assert v.kind == "Indeterminate"
    assert any("dimension 2" in r for r in v.reasons)


# -- component holonomy descriptors ------------------------------------


def test_cusp_component_holonomy():
    germ = OneFormGerm(X() * X() * C(1, -3), Y().scale(2))
    an = decide_l_stability(germ)
    assert [ch.self_intersection for ch in an.components] == [-3, -2, -1]
    assert all(ch.index_theorem_ok for ch in an.components)
    assert all(
        ch.group.classification.value == "finite-cyclic" for ch in an.components
    )
    sums = {ch.cid: ch.index_sum for ch in an.components}
    assert sums[3] == KElement(1, -1)


# -- holonomy evidence refinement --------------------------------------


def one_mult():
    return Multiplier.of(KElement(1, 1))


@pytest.fixture(scope="module")
def groups():
    return {
        "witness": classify_group([FormalGerm(1, one_mult(), {2: 1}, order=6)]),
        "finite": classify_group([FormalGerm(1, Multiplier.exp2pi_i(Fraction(1, 3)))]),
        "circle": classify_group([FormalGerm(2, Multiplier.exp2pi_i(SQRT2))]),
    }


def base(kind, **kw):
    return StabilityVerdict(kind, ["base"], **kw)


def test_witness_promotes_to_unstable(groups):
    for kind in ("Indeterminate", "RealLogarithmic"):
        v = apply_holonomy_evidence(base(kind), groups["witness"])
        assert v.kind == "NotLStable"
        assert v.witness["kind"] == "holonomy-element"
        assert v.witness["class"] == "flat"
    v = apply_holonomy_evidence(base("FirstIntegralCandidate"), groups["witness"])
    assert v.kind == "FirstIntegralCandidate"
    assert v.contradiction


def test_finite_group_promotes_to_candidate(groups):
    v = apply_holonomy_evidence(base("Indeterminate"), groups["finite"])
    assert v.kind == "FirstIntegralCandidate"
    assert v.integral_mode == "holonomy-evidence"
    assert v.conditional
    v = apply_holonomy_evidence(base("RealLogarithmic"), groups["finite"])
    assert v.kind == "FirstIntegralCandidate"
    assert v.contradiction
    v = apply_holonomy_evidence(base("NotLStable"), groups["finite"])
    assert v.kind == "NotLStable"
    assert v.contradiction


def test_circle_type_with_orbit_evidence(groups):
    ref = refine_with_orbit_evidence(groups["circle"], "closed-off-origin")
    assert ref.forced_finite and ref.contradiction
    v = apply_holonomy_evidence(base("Indeterminate"), groups["circle"], "closed-off-origin")
    assert v.kind == "FirstIntegralCandidate"
    assert v.contradiction
    v = apply_holonomy_evidence(base("RealLogarithmic"), groups["circle"])
    assert v.kind == "RealLogarithmic"
    assert not v.contradiction


def test_refinement_is_monotone(groups):
    allowed = {
        "NotLStable": {"NotLStable"},
        "FirstIntegralCandidate": {"FirstIntegralCandidate"},
        "RealLogarithmic": {"RealLogarithmic", "FirstIntegralCandidate", "NotLStable"},
        "Indeterminate": {"Indeterminate", "FirstIntegralCandidate", "NotLStable"},
    }
    for kind, targets in allowed.items():
        for g in groups.values():
            for ev in ("none", "closed-off-origin", "non-recurrent"):
                v = apply_holonomy_evidence(base(kind), g, ev)
                assert v.kind in targets, (kind, g.classification, ev, v.kind)


def test_holonomy_applied_inside_decide(groups):
    germ = OneFormGerm(X() * X() * C(1, -3), Y().scale(2))
    an = decide_l_stability(germ, holonomy=groups["witness"])
    assert an.verdict.kind == "FirstIntegralCandidate"
    assert an.verdict.contradiction


def test_verify_witness_needs_point_data():
    an = decide_l_stability(linear(1, I1))
    with pytest.raises(ValueError):
        verify_witness(an.tree, {"kind": "holonomy-element", "word": "g1"})
