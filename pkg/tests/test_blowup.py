from fractions import Fraction

import pytest

from folstab import KElement
from folstab.blowup import blowup_once, divisor_singular_parameters
from folstab.poly import OneFormGerm, SparsePoly


def X(d=1):
    return SparsePoly.x(d)


def Y(d=1):
    return SparsePoly.y(d)


def linear_form(lam, d=1):
    """x dy - lam y dx, the diagonal model with eigenvalue ratio lam."""
    return OneFormGerm(Y(d).scale(-lam), X(d))


def test_linear_charts():
    lam = Fraction(5)
    res = blowup_once(linear_form(lam))
    assert res.nu == 1 and not res.dicritical
    x, y = X(), Y()
    # u-chart: (1 - lam) v du + u dv
    assert res.u_chart.A == (1 - lam) * y
    assert res.u_chart.B == x
    # v-chart: -lam v du + (1 - lam) u dv
    assert res.v_chart.A == -lam * y
    assert res.v_chart.B == (1 - lam) * x

    roots, v_origin, missing = divisor_singular_parameters(res)
    assert [r for r, _ in roots] == [KElement(1, 0)]
    assert v_origin
    assert missing == []


def test_radial_is_dicritical():
    res = blowup_once(OneFormGerm(-Y(), X()))  # x dy - y dx
    assert res.dicritical
    assert res.u_chart.divided_power == 2
    # the transform is regular and transverse to the divisor
    assert res.u_chart.A.is_zero()
    assert res.u_chart.B == 1
    roots, v_origin, _ = divisor_singular_parameters(res)
    assert roots == [] and not v_origin


def test_cusp_first_blowup():
    x, y = X(), Y()
    germ = OneFormGerm(-3 * x**2, 2 * y)  # d(y^2 - x^3)
    res = blowup_once(germ)
    assert res.nu == 1 and not res.dicritical
    assert res.u_chart.A == 2 * y**2 - 3 * x
    assert res.u_chart.B == 2 * x * y
    assert res.v_chart.B.coefficient(0, 0) == 2  # v-origin regular

    roots, v_origin, _ = divisor_singular_parameters(res)
    assert [(r, m) for r, m in roots] == [(KElement(1, 0), 2)]
    assert not v_origin


def test_germ_at_divisor_point():
    res = blowup_once(linear_form(Fraction(5)))
    g0 = res.u_chart.germ_at(KElement(1, 0))
    (j00, _), (_, j11) = g0.jacobian()
    assert (j00, j11) == (KElement(1, 1), KElement(1, 4))
    gv = res.v_chart.germ_at(KElement(1, 0))
    (k00, _), (_, k11) = gv.jacobian()
    assert (k00, k11) == (KElement(1, -4), KElement(1, 5))
    with pytest.raises(ValueError):
        res.v_chart.germ_at(KElement(1, 1))
