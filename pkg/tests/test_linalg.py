from fractions import Fraction

from folstab import KElement
from folstab.linalg import kernel_basis, rref, solve


def test_rref_identity():
    R, piv = rref([[1, 0], [0, 1]], 1)
    assert piv == [0, 1]
    assert R[0][0] == 1 and R[1][1] == 1


def test_rref_dependent_rows():
    R, piv = rref([[1, 2], [2, 4]], 1)
    assert piv == [0]
    assert R[1][0] == 0 and R[1][1] == 0


def test_kernel():
    ker = kernel_basis([[1, 1, 0], [0, 0, 1]], 3, 1)
    assert len(ker) == 1
    v = ker[0]
    assert v[0] + v[1] == 0 and v[2] == 0 and v[1] == 1

    ker2 = kernel_basis([], 2, 1)
    assert len(ker2) == 2


def test_kernel_over_radical_field():
    r2 = KElement(2, 0, 1)
    ker = kernel_basis([[r2, -1]], 2, 2)
    assert len(ker) == 1
    a, b = ker[0]
    assert r2 * a == b


def test_solve():
    x = solve([[2, 0], [0, 4]], [1, 1], 1)
    assert x == [Fraction(1, 2), Fraction(1, 4)]
    assert solve([[1, 1], [1, 1]], [0, 1], 1) is None
    under = solve([[1, 1]], [3], 1)
    assert under[0] + under[1] == 3
