"""Roots in K of univariate polynomials with K coefficients.

Strategy: multiply the polynomial by its Galois conjugates (i -> -i,
sqrt(d) -> -sqrt(d)) to land in Q[t], factor there, then intersect each
rational factor with the input over K by a gcd.  K/Q is Galois, so
every root of the input lying in K appears inside some rational factor,
and the gcd cuts the factor down to exactly the shared part: degree 1
pieces hand over their root directly, degree 2 pieces go through an
exact square root of the discriminant.  Shared pieces of degree >= 3,
or quadratics whose discriminant has no square root in K, are reported
as unrepresented rather than solved.

sympy is confined to this module: rational factorization and integer
factorization only.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .field import KElement
from .poly import SparsePoly, poly_gcd

_T = sympy.Symbol("t")


def _conj_poly(p: SparsePoly, which: str) -> SparsePoly:
    table = {}
    for m, v in p.c.items():
        table[m] = v.conjugate() if which == "i" else v.sqrt_conjugate()
    return SparsePoly(p.d, table)


def _to_sympy(p: SparsePoly):
    expr = sympy.Integer(0)
    for (_zero, k), v in p.c.items():
        f = v.to_fraction()
        expr += sympy.Rational(f.numerator, f.denominator) * _T**k
    return expr


def _factor_coeffs(expr) -> list[tuple[list[Fraction], int]]:
    """Irreducible rational factors as descending coefficient lists."""
    _, factors = sympy.factor_list(expr, _T)
    out = []
    for f, mult in factors:
        coeffs = sympy.Poly(f, _T).all_coeffs()
        out.append(
            ([Fraction(int(c.p), int(c.q)) for c in coeffs], int(mult))
        )
    return out


def _from_coeffs(d: int, coeffs: list[Fraction]) -> SparsePoly:
    n = len(coeffs) - 1
    return SparsePoly(d, {(0, n - k): c for k, c in enumerate(coeffs)})


def univariate_roots_in_K(
    p: SparsePoly, var: str = "y"
) -> tuple[list[tuple[KElement, int]], list[str]]:
    """All roots of p lying in K, with multiplicities.

    Returns (roots, unrepresented): `unrepresented` lists the rational
    factors whose roots matter for p but do not live in K.
    """
    if var == "x":
        p = p.swap_xy()
    elif var != "y":
        raise ValueError(f"unknown variable {var!r}")
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    if p.degree_x() > 0:
        raise ValueError("polynomial is not univariate")
    d = p.d
    if p.degree_y() == 0:
        return [], []

    orbit: list[SparsePoly] = []
    for q in (
        p,
        _conj_poly(p, "i"),
        _conj_poly(p, "s"),
        _conj_poly(_conj_poly(p, "i"), "s"),
    ):
        if q not in orbit:
            orbit.append(q)
    norm = SparsePoly.constant(d, 1)
    for q in orbit:
        norm = norm * q
    for _m, v in norm.c.items():
        if not v.is_rational():
            raise AssertionError("conjugate product left the rationals")

    roots: list[tuple[KElement, int]] = []
    unrepresented: list[str] = []
    for coeffs, _mult in _factor_coeffs(_to_sympy(norm)):
        # restrict each rational factor to the part it shares with p;
        # the gcd over K often has smaller degree than the factor
        g = poly_gcd(p, _from_coeffs(d, coeffs))
        deg = g.degree_y()
        if deg < 1:
            continue
        candidates: list[KElement] = []
        if deg == 1:
            candidates.append(-g.coefficient(0, 0))  # g is monic
        elif deg == 2:
            b, c = g.coefficient(0, 1), g.coefficient(0, 0)
            s = (b * b - 4 * c).sqrt()
            if s is not None:
                candidates.append((s - b)._scale(Fraction(1, 2)))
                candidates.append(((-s) - b)._scale(Fraction(1, 2)))
        if not candidates:
            unrepresented.append(str(g))
            continue
        for r in candidates:
            lin = SparsePoly(d, {(0, 1): 1, (0, 0): -r})
            mult = 0
            q = p
            while (q2 := q.exact_div(lin)) is not None:
                q, mult = q2, mult + 1
            assert mult >= 1
            roots.append((r, mult))
    roots.sort(key=lambda rm: (rm[0].d, rm[0].q))
    return roots, unrepresented


def square_free_part(q: Fraction) -> tuple[int, Fraction]:
    """Write q = m * s^2 with m a square-free integer, s > 0 rational."""
    if q == 0:
        return 0, Fraction(0)
    n = q.numerator * q.denominator
    m = 1 if n > 0 else -1
    s_num = 1
    for prime, e in sympy.factorint(abs(n)).items():
        if e % 2:
            m *= int(prime)
        s_num *= int(prime) ** (e // 2)
    return m, Fraction(s_num, q.denominator)
