"""Dense exact linear algebra over K, Gaussian elimination throughout.

Matrices are lists of rows; entries may be KElement or rationals and
are coerced into the stated field.
"""

from __future__ import annotations

from fractions import Fraction

from .field import KElement


def _k(d: int, v) -> KElement:
    return v if isinstance(v, KElement) else KElement(d, v)


def rref(matrix, d: int):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    m = [[_k(d, v) for v in row] for row in matrix]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if not m[i][col].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inverse()
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    return m, pivots


def kernel_basis(matrix, ncols: int, d: int):
    """Basis of the right kernel, one vector per free column."""
    one = KElement(d, 1)
    if not matrix:
        out = []
        for j in range(ncols):
            v = [KElement(d) for _ in range(ncols)]
            v[j] = one
            out.append(v)
        return out
    R, pivots = rref(matrix, d)
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for j in free:
        v = [KElement(d) for _ in range(ncols)]
        v[j] = one
        for row, pc in enumerate(pivots):
            v[pc] = -R[row][j]
        out.append(v)
    return out


def solve(matrix, rhs, d: int):
    """One solution of matrix @ x = rhs, or None when inconsistent."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    R, pivots = rref(aug, d)
    if ncols in pivots:
        return None
    x = [KElement(d) for _ in range(ncols)]
    for row, pc in enumerate(pivots):
        x[pc] = R[row][ncols]
    return x
