from fractions import Fraction

import pytest

from folstab import KElement
from folstab.ratio import AlgebraicRatio, RatioClass


def test_value_classification():
    info = AlgebraicRatio.from_value(KElement(1, -5)).classify()
    assert info.ratio_class is RatioClass.NEGATIVE_RATIONAL
    assert info.is_siegel
    assert info.as_fraction == -5
    assert info.resonant_pq == (5, 1)

    info = AlgebraicRatio.from_value(KElement(1, Fraction(-2, 3))).classify()
    assert info.resonant_pq == (2, 3)

    info = AlgebraicRatio.from_value(KElement(1, 2)).classify()
    assert info.ratio_class is RatioClass.POSITIVE_RATIONAL
    assert info.domain == "poincare"

    info = AlgebraicRatio.from_value(KElement(1, 1, 0, 1)).classify()
    assert info.ratio_class is RatioClass.NON_REAL

    assert AlgebraicRatio.from_value(KElement(2, 0, 1)).classify().domain == "poincare"
    neg = AlgebraicRatio.from_value(KElement(2, 0, -1)).classify()
    assert neg.ratio_class is RatioClass.REAL_IRRATIONAL
    assert neg.is_siegel
    assert neg.as_fraction is None

    with pytest.raises(ValueError):
        AlgebraicRatio.from_value(KElement(1, 0))


def test_matrix_radial_and_resonant():
    # x d/dx + lambda y d/dy has trace 1 + lambda, det lambda
    lam = KElement(1, -1)
    r = AlgebraicRatio.from_matrix(1 + lam, lam)
    assert r.value == -1
    assert r.classify().resonant_pq == (1, 1)

    lam = KElement(1, 2)
    r = AlgebraicRatio.from_matrix(1 + lam, lam)
    assert r.value == Fraction(1, 2)  # canonical pick of {2, 1/2}
    assert r.classify().ratio_class is RatioClass.POSITIVE_RATIONAL


def test_matrix_golden_ratio_field():
    # trace 1, det -1: ratios (-3 +- sqrt5)/2, both negative irrational
    t, det = KElement(5, 1), KElement(5, -1)
    r = AlgebraicRatio.from_matrix(t, det)
    assert r.value == KElement(5, Fraction(-3, 2), Fraction(1, 2))
    info = r.classify()
    assert info.ratio_class is RatioClass.REAL_IRRATIONAL
    assert info.is_siegel


def test_matrix_golden_ratio_without_sqrt5():
    # same data in Q(i, sqrt2): roots leave K but the class is decided
    t, det = KElement(2, 1), KElement(2, -1)
    r = AlgebraicRatio.from_matrix(t, det)
    assert r.value is None
    info = r.classify()
    assert info.ratio_class is RatioClass.REAL_IRRATIONAL
    assert info.is_siegel
    nr = r.numeric_roots()
    assert abs(nr[0] - (-3 - 5**0.5) / 2) < 1e-9
    assert abs(nr[1] - (-3 + 5**0.5) / 2) < 1e-9


def test_matrix_rotation_sixth_root():
    # trace 1, det 1: eigenvalues primitive sixth roots, ratio is cubic
    t, det = KElement(3, 1), KElement(3, 1)
    r = AlgebraicRatio.from_matrix(t, det)
    assert r.value == KElement(3, Fraction(-1, 2), 0, 0, Fraction(1, 2))
    assert r.classify().ratio_class is RatioClass.NON_REAL

    r2 = AlgebraicRatio.from_matrix(KElement(2, 1), KElement(2, 1))
    assert r2.value is None
    assert r2.classify().ratio_class is RatioClass.NON_REAL
    nr = r2.numeric_roots()
    assert abs(nr[0] - complex(-0.5, -(3**0.5) / 2)) < 1e-9


def test_zero_determinant_rejected():
    with pytest.raises(ValueError):
        AlgebraicRatio.from_matrix(KElement(1, 1), KElement(1, 0))


def test_mixed_sign_quadratic_rejected():
    # r^2 - r - 1: roots of opposite sign, not a reciprocal pair
    bad = AlgebraicRatio(1, quad=(KElement(1, -1), KElement(1, -1)))
    with pytest.raises(ValueError):
        bad.classify()


def test_numeric_matches_exact():
    t, det = KElement(5, 1), KElement(5, -1)
    exact = AlgebraicRatio.from_matrix(t, det).value.to_complex()
    approx = AlgebraicRatio.from_matrix(KElement(1, 1), KElement(1, -1))
    assert min(abs(z - exact) for z in approx.numeric_roots()) < 1e-9
