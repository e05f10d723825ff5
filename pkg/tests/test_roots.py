from fractions import Fraction

import pytest

from folstab import KElement
from folstab.poly import SparsePoly
from folstab.roots import square_free_part, univariate_roots_in_K


def yp(d, *coeffs):
    """Polynomial in y from descending rational/K coefficients."""
    n = len(coeffs) - 1
    return SparsePoly(d, {(0, n - k): c for k, c in enumerate(coeffs)})


def test_rational_roots_with_multiplicity():
    p = yp(1, 1, -2, 1) * yp(1, 1, 3)  # (y-1)^2 (y+3)
    roots, missing = univariate_roots_in_K(p)
    assert missing == []
    assert (KElement(1, 1), 2) in roots
    assert (KElement(1, -3), 1) in roots
    assert len(roots) == 2


def test_radical_roots():
    p = yp(2, 1, 0, -2)  # y^2 - 2
    roots, missing = univariate_roots_in_K(p)
    assert missing == []
    assert {r for r, _ in roots} == {KElement(2, 0, 1), KElement(2, 0, -1)}

    roots3, missing3 = univariate_roots_in_K(yp(3, 1, 0, -2))
    assert roots3 == []
    assert len(missing3) == 1


def test_gaussian_roots():
    i = KElement(1, 0, 0, 1)
    p = yp(1, 1, 0, 1)  # y^2 + 1
    roots, missing = univariate_roots_in_K(p)
    assert missing == []
    assert {r for r, _ in roots} == {i, -i}


def test_mixed_coefficients():
    d = 2
    r2 = KElement(d, 0, 1)
    i = KElement(d, 0, 0, 1)
    p = yp(d, KElement(d, 1), -(r2 + i)) * yp(d, KElement(d, 1), r2)
    # (y - sqrt2 - i)(y + sqrt2)
    roots, missing = univariate_roots_in_K(p)
    assert missing == []
    assert {r for r, _ in roots} == {r2 + i, -r2}


def test_repeated_radical_root():
    d = 2
    r2 = KElement(d, 0, 1)
    lin = yp(d, KElement(d, 1), -r2)
    roots, _ = univariate_roots_in_K(lin * lin)
    assert roots == [(r2, 2)]


def test_cubic_unrepresented():
    p = yp(1, 1, 0, 0, -2)  # y^3 - 2
    roots, missing = univariate_roots_in_K(p)
    assert roots == []
    assert len(missing) == 1


def test_mixed_field_membership():
    # (y^2 - 2)(y - 3) over d = 3: only the rational root lands in K
    p = yp(3, 1, 0, -2) * yp(3, 1, -3)
    roots, missing = univariate_roots_in_K(p)
    assert roots == [(KElement(3, 3), 1)]
    assert len(missing) == 1


def test_var_x():
    p = SparsePoly(1, {(2, 0): 1, (0, 0): -4})  # x^2 - 4
    roots, _ = univariate_roots_in_K(p, var="x")
    assert {r for r, _ in roots} == {KElement(1, 2), KElement(1, -2)}
    with pytest.raises(ValueError):
        univariate_roots_in_K(SparsePoly(1, {(1, 1): 1}))


def test_constant_and_zero():
    assert univariate_roots_in_K(yp(1, 5)) == ([], [])
    with pytest.raises(ValueError):
        univariate_roots_in_K(SparsePoly.zero(1))


def test_half_integer_roots():
    p = yp(1, 2, -1)  # 2y - 1
    roots, _ = univariate_roots_in_K(p)
    assert roots == [(KElement(1, Fraction(1, 2)), 1)]


def test_square_free_part():
    assert square_free_part(Fraction(12)) == (3, 2)
    assert square_free_part(Fraction(-8, 9)) == (-2, Fraction(2, 3))
    assert square_free_part(Fraction(1, 2)) == (2, Fraction(1, 2))
    assert square_free_part(Fraction(49)) == (1, 7)
    assert square_free_part(Fraction(0)) == (0, 0)
