from fractions import Fraction

import pytest

from folstab import KElement
from folstab.classify import (
    Classification,
    SingKind,
    classify_singularity,
    is_generalized_curve,
)
from folstab.errors import JetOrderInsufficient
from folstab.poly import OneFormGerm, SparsePoly
from folstab.ratio import RatioClass


def X(d=1):
    return SparsePoly.x(d)


def Y(d=1):
    return SparsePoly.y(d)


def from_field(P, Q):
    return OneFormGerm.from_vector_field(P, Q)


def test_linear_siegel_resonant():
    # x dy + (2/3) y dx: eigenvalues 1 and -2/3
    germ = OneFormGerm(Y().scale(Fraction(2, 3)), X())
    c = classify_singularity(germ)
    assert c.kind is SingKind.NON_DEGENERATE
    assert c.ratio_info.ratio_class is RatioClass.NEGATIVE_RATIONAL
    assert c.ratio_info.resonant_pq == (2, 3)
    assert c.eigenvalues == (KElement(1, 1), KElement(1, Fraction(-2, 3)))


def test_positive_rational_is_not_reduced():
    germ = OneFormGerm(Y().scale(-2), X())
    c = classify_singularity(germ)
    assert c.kind is SingKind.NOT_REDUCED
    assert "in Q+" in c.not_reduced_reason


def test_nilpotent_and_zero_linear_part():
    cusp = OneFormGerm(X() * X() * (-3), Y().scale(2))
    c = classify_singularity(cusp)
    assert c.kind is SingKind.NOT_REDUCED
    assert c.not_reduced_reason == "nilpotent linear part"

    c = classify_singularity(OneFormGerm(X() * X(), Y() * Y()))
    assert c.not_reduced_reason == "zero linear part"


def test_hyperbolic_eigenvalues_need_the_field():
    # omega = -(x+y) dx + y dy, trace 1, det -1
    g1 = OneFormGerm(-(X() + Y()), Y())
    c = classify_singularity(g1)
    assert c.kind is SingKind.NON_DEGENERATE
    assert c.ratio_info.ratio_class is RatioClass.REAL_IRRATIONAL
    assert c.ratio_info.is_siegel
    assert c.eigenvalues is None

    g5 = OneFormGerm(-(X(5) + Y(5)), Y(5))
    c = classify_singularity(g5)
    half = Fraction(1, 2)
    assert c.eigenvalues == (KElement(5, half, half), KElement(5, half, -half))


def test_saddle_node_basic():
    germ = from_field(X() * X(), Y())
    c = classify_singularity(germ)
    assert c.kind is SingKind.SADDLE_NODE
    assert c.saddle_p == 1
    assert c.saddle_lambda == 0
    assert c.eigenvalues == (KElement(1, 1), KElement(1))


def test_saddle_node_formal_modulus():
    germ = from_field(X() * X(), Y() + X() * Y().scale(3))
    c = classify_singularity(germ)
    assert c.saddle_p == 1
    assert c.saddle_lambda == 3


def test_saddle_node_higher_multiplicity():
    germ = from_field(X() ** 5, Y())
    c = classify_singularity(germ)
    assert c.saddle_p == 4
    assert c.saddle_lambda == 0

    with pytest.raises(JetOrderInsufficient):
        classify_singularity(germ, jet_order=3)

    c = classify_singularity(germ, jet_order=8)
    assert c.saddle_p == 4
    assert c.saddle_lambda is None
    assert any("2p+1" in n for n in c.notes)


def test_saddle_node_invariants_under_linear_change():
    base = from_field(X() * X(), Y() + X() * Y().scale(3))
    for m in (((1, 1), (0, 1)), ((1, 1), (1, 2)), ((0, 1), (1, 0))):
        moved = base.linear_change(m)
        c = classify_singularity(moved)
        assert c.kind is SingKind.SADDLE_NODE
        assert c.saddle_p == 1
        assert c.saddle_lambda == 3


def test_saddle_node_curved_center_manifold():
    base = from_field(X() * X(), Y() + X() * Y().scale(3))
    # pull back under (x, y + x^2); the center manifold becomes y = -x^2
    a, b = base.pullback_components(X(), Y() + X() * X())
    moved = OneFormGerm(a, b)
    c = classify_singularity(moved)
    assert c.saddle_p == 1
    assert c.saddle_lambda == 3


def test_saddle_node_axis_swap():
    base = from_field(X() * X(), Y() + X() * Y().scale(3))
    swapped = OneFormGerm(base.B.swap_xy(), base.A.swap_xy())
    c = classify_singularity(swapped)
    assert c.saddle_p == 1
    assert c.saddle_lambda == 3


def test_generalized_curve_predicate():
    hyper = classify_singularity(OneFormGerm(-(X() + Y()), Y()))
    node = classify_singularity(from_field(X() * X(), Y()))
    assert is_generalized_curve([hyper])
    assert not is_generalized_curve([hyper, node])
    assert is_generalized_curve([])
