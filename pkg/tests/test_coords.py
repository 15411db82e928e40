import random
from fractions import Fraction

import pytest

from bipartite_maps.coords.derivatives import diff_table
from bipartite_maps.coords.greek_series import (
    atom_coefficient,
    combo_series,
    greek_series,
    parse_atom,
)
from bipartite_maps.coords.theta import (
    check_theta_inverse,
    d_op,
    d_series,
    inverse_d,
    laurent,
    theta_closed,
    theta_inverse,
    theta_of_combo,
    theta_series,
)
from bipartite_maps.series.series import Chart, Series

ATOMS = ["gamma", "eta", "zeta"] + [f"{f}_{i}" for f in ("eta", "zeta") for i in range(1, 5)]


def test_atom_coefficients():
    assert [atom_coefficient("gamma", k) for k in (1, 2, 3)] == [1, 3, 10]
    assert [atom_coefficient("eta", k) for k in (1, 2, 3)] == [0, 3, 20]
    assert atom_coefficient("zeta", 2) == 1
    assert atom_coefficient("eta_1", 2) == 6
    assert atom_coefficient("zeta_1", 2) == 8
    assert atom_coefficient("zeta_1", 1) == 0


def test_parse_atom():
    assert parse_atom("eta_3") == ("eta", 3)
    assert parse_atom("zeta") == ("zeta", 0)
    for bad in ("gamma_1", "zeta_0", "xi"):
        with pytest.raises(ValueError):
            parse_atom(bad)


def test_change_of_variables_first_terms(coords):
    assert coords.z_of_t.coeff((1, 0, ())) == 1
    assert coords.z_of_t.coeff((2, 0, (1,))) == 1
    assert coords.u_of_xz.coeff((1, 2, ())) == 2


def test_round_trip_through_both_charts(coords, family):
    F1 = family.F[1].truncate(8)
    assert coords.to_tx(coords.to_zu(F1)).truncate(8) == F1


def test_implicit_differentiation_table(coords):
    table = diff_table(coords)
    assert len(table) == 10
    for row in table:
        assert row.holds, row.name


@pytest.mark.parametrize("name", ATOMS)
def test_theta_closed_forms(name):
    assert theta_closed(name).to_series(10) == theta_series(greek_series(name, 10))


@pytest.mark.parametrize("name", ATOMS)
def test_d_closed_forms(name):
    assert d_series(greek_series(name, 10)) == combo_series(d_op({name: 1}), 10)


def test_theta_of_eta_1():
    assert theta_closed("eta_1") == laurent((-5, Fraction(3, 8)), (-3, Fraction(-3, 4)), (-1, Fraction(3, 8)))


def test_inverse_d_on_its_span():
    for combo in (
        {"eta": 1, "gamma": 1},
        {"zeta": 1, "gamma": -1},
        {"eta_2": 3},
        {"zeta_3": Fraction(1, 2), "eta_1": -1},
    ):
        assert inverse_d(d_op(combo)) == combo


def test_theta_inverse_round_trip():
    combo = {"eta_2": 1, "zeta_1": Fraction(-3, 2), "eta": 2, "gamma": 2}
    assert theta_of_combo(theta_inverse(theta_of_combo(combo))) == theta_of_combo(combo)
    rng = random.Random(0)
    for _ in range(10):
        even = laurent(*((2 * j, Fraction(rng.randint(-9, 9), rng.randint(1, 9))) for j in range(-3, 3)))
        check_theta_inverse(laurent((-1, 1), (1, -1)) * even)


def test_theta_inverse_rejects_values_off_the_image():
    with pytest.raises(ValueError):
        theta_inverse(laurent((1, 1)))


def test_theta_series_rejects_nonlinear_input():
    with pytest.raises(ValueError):
        theta_series(Series.build(Chart.ZUP, 4, {(2, 0, (1, 1)): 1}))
