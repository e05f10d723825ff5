"""One quadratic blow-up of a singular 1-form germ, in both charts.

Chart conventions, with (x, y) downstairs and (u, v) local:
  u-chart: (x, y) = (u, u v), divisor {u = 0}, covers all directions
           except the vertical one;
  v-chart: (x, y) = (u v, v), divisor {v = 0}; only its origin (the
           vertical direction) is not already seen in the u-chart.

The pulled-back form is divided by the maximal divisor power: the
multiplicity nu of the germ, or nu + 1 exactly when the germ is
dicritical, i.e. x A_nu + y B_nu = 0 for the lowest homogeneous parts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import KElement
from .poly import OneFormGerm, SparsePoly, poly_gcd
from .roots import univariate_roots_in_K


@dataclass(frozen=True)
class BlowupChart:
    chart: str  # "u" or "v"
    A: SparsePoly
    B: SparsePoly
    divided_power: int

    def germ_at(self, shift: KElement) -> OneFormGerm:
        """Germ at the divisor point (u-chart: v = shift; v-chart the
        origin), translated to local coordinates centered there."""
        base = OneFormGerm(self.A, self.B)
        if self.chart == "u":
            return base.translate(0, shift)
        if not shift.is_zero():
            raise ValueError("v-chart points other than the origin are u-chart points")
        return base


@dataclass(frozen=True)
class BlowupResult:
    nu: int
    dicritical: bool
    u_chart: BlowupChart
    v_chart: BlowupChart


def blowup_once(germ: OneFormGerm) -> BlowupResult:
    d = germ.d
    x, y = SparsePoly.x(d), SparsePoly.y(d)
    nu = germ.multiplicity()
    tangent = x * germ.A.homogeneous_component(nu) + y * germ.B.homogeneous_component(nu)
    dicritical = tangent.is_zero()
    m = nu + 1 if dicritical else nu

    Au = germ.A.substitute(x, x * y)
    Bu = germ.B.substitute(x, x * y)
    u_chart = BlowupChart(
        "u",
        (Au + y * Bu).div_monomial(m, 0),
        (x * Bu).div_monomial(m, 0),
        m,
    )
    Av = germ.A.substitute(x * y, y)
    Bv = germ.B.substitute(x * y, y)
    v_chart = BlowupChart(
        "v",
        (y * Av).div_monomial(0, m),
        (x * Av + Bv).div_monomial(0, m),
        m,
    )
    return BlowupResult(nu=nu, dicritical=dicritical, u_chart=u_chart, v_chart=v_chart)


def divisor_singular_parameters(
    res: BlowupResult,
) -> tuple[list[tuple[KElement, int]], bool, list[str]]:
    """Singular points of the transform on the new divisor.

    Returns (u-chart roots with multiplicity, v-origin singular flag,
    unrepresented factor strings)."""
    g = poly_gcd(res.u_chart.A.subs_x(0), res.u_chart.B.subs_x(0))
    if g.degree() == 0:
        roots: list[tuple[KElement, int]] = []
        missing: list[str] = []
    else:
        roots, missing = univariate_roots_in_K(g)
    v_origin = (
        res.v_chart.A.coefficient(0, 0).is_zero()
        and res.v_chart.B.coefficient(0, 0).is_zero()
    )
    return roots, v_origin, missing
