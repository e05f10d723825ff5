import cmath
from fractions import Fraction

from folstab import KElement
from folstab.germs import FormalGerm, Multiplier
from folstab.orbit import NumericGerm, simulate_pseudo_orbit


def test_apply_is_polynomial_evaluation():
    g = NumericGerm((2.0, 0.5, 0j), 1.0)
    z = 0.1 + 0.2j
    assert abs(g.apply(z) - (2 * z + 0.5 * z * z)) < 1e-15


def test_from_formal():
    f = FormalGerm(1, Multiplier.of(KElement(1, 2)), {3: Fraction(1, 2)}, order=4)
    g = NumericGerm.from_formal(f, 0.5)
    assert g.coeffs == (2 + 0j, 0j, 0.5 + 0j, 0j)
    assert g.radius == 0.5


def test_numeric_inverse_round_trip():
    g = NumericGerm((1.0 + 0j, 1.0 + 0j, 0j, 0j, 0j, 0j), 0.5)
    inv = g.inverse()
    assert abs(inv.coeffs[1] + 1) < 1e-12
    assert abs(inv.coeffs[2] - 2) < 1e-12
    assert abs(inv.coeffs[3] + 5) < 1e-12
    for z in (0.01, 0.005 + 0.007j):
        assert abs(inv.apply(g.apply(z)) - z) < 1e-9


def test_escape_of_expanding_map():
    g = NumericGerm((1.1 + 0j,), 0.15)
    res = simulate_pseudo_orbit([g], 0.05, u_radius=0.1, budget=1000)
    assert res.escaped
    assert res.escape_step == 8
    assert abs(res.escape_point) > 0.1


def test_rotation_drifts_below_tolerance():
    theta = (5 ** 0.5 - 1) / 2
    g = NumericGerm((cmath.exp(2j * cmath.pi * theta),), 0.2)
    res = simulate_pseudo_orbit([g], 0.05, u_radius=0.1, budget=10000)
    assert not res.escaped
    assert res.expansions == 10000
    assert res.max_drift < 1e-10


def test_periodic_orbit_closes():
    g = NumericGerm((1j,), 0.2)
    res = simulate_pseudo_orbit([g], 0.05, u_radius=0.1, budget=10000)
    assert not res.escaped
    assert res.visited == 4
    assert res.expansions <= 16


def test_start_outside_escape_radius():
    g = NumericGerm((1.0 + 0j,), 0.2)
    res = simulate_pseudo_orbit([g], 0.5, u_radius=0.1)
    assert res.escaped and res.escape_step == 0 and res.expansions == 0
