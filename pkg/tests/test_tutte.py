from fractions import Fraction

import pytest

from bipartite_maps.errors import StructuralError
from bipartite_maps.series.series import Chart, Series
from bipartite_maps.tutte.engine import (
    census_coefficients,
    closed_f0_f02,
    compute_F,
    rooting_defect,
    unroot_series,
    vertex_series,
)
from bipartite_maps.tutte.operators import (
    SeriesOperators,
    apply_delta,
    apply_gamma,
    apply_gamma_series,
    apply_omega,
    apply_operator,
)
from bipartite_maps.tutte.quadrangulations import (
    planar_quadrangulation_oracle,
    quadrangulation_series,
    torus_quadrangulation_oracle,
)


def test_operator_registry():
    assert SeriesOperators.names() == ["delta", "gamma", "omega", "pi", "xi"]
    f = Series.build(Chart.TXP, 4, {(2, 1, (1,)): 1})
    assert apply_operator("gamma", f) == apply_gamma(f)
    with pytest.raises(ValueError):
        apply_operator("sigma", f)


def test_delta_divides_out_x():
    f = Series.build(Chart.TXP, 4, {(3, 2, (1,)): 1, (2, 0, (2,)): 5})
    assert dict(apply_delta(f).terms) == {(3, 1, (1,)): 1}
    assert apply_operator("delta", f) == apply_delta(f)


def test_omega_and_gamma_on_a_monomial():
    f = Series.build(Chart.TXP, 4, {(3, 2, (1,)): 1}, graded=True)
    assert dict(apply_omega(f).terms) == {(3, 1, (1, 1)): 1, (3, 0, (2, 1)): 1}
    assert dict(apply_gamma_series(f).terms) == {(3, 3, ()): 1}


def test_first_orders_of_planar_series(family):
    F0 = family.F[0]
    assert F0.coeff((0, 0, ())) == 1
    assert F0.coeff((1, 1, ())) == 1
    assert F0.coeff((2, 2, ())) == 2
    assert F0.coeff((2, 1, (1,))) == 1


def test_first_torus_coefficient(family):
    F1 = family.F[1]
    assert F1.valuation() == 3
    assert F1.coeff((3, 3, ())) == 1


def test_every_key_is_graded(family):
    for g in range(family.G + 1):
        assert family.F[g].check_grading()
        assert unroot_series(family.F[g]).check_grading()


def test_engine_matches_census(family, census_tables):
    for n, (table, _) in census_tables.items():
        for g in range(min(family.G, (n - 1) // 2) + 1):
            L = unroot_series(family.F[g])
            ours = {mu: c for mu, c in census_coefficients(L, n).items() if c}
            assert ours == {mu: c for (h, mu), c in table.entries.items() if h == g}


def test_rooted_engine_matches_census(engine, family):
    rooted = engine.rooted_census(5)
    F2 = family.F[2]
    ours = {(k, mu): c for (m, k, mu), c in F2.terms.items() if m == 5}
    assert ours == {(k, mu): c for (g, k, mu), c in rooted.entries.items() if g == 2}


def test_rooting_recovers_F(family):
    for g in range(family.G + 1):
        F = family.F[g]
        assert not rooting_defect(unroot_series(F), F)


def test_pure_p1_monomials_vanish_in_positive_genus(family):
    for g in (1, 2):
        L = unroot_series(family.F[g])
        assert not L.restrict(lambda mu: bool(mu) and set(mu) == {1})


def test_unroot_rejects_non_gamma_image():
    F = Series.build(Chart.TXP, 3, {(3, 1, (2,)): 1}, graded=True)
    with pytest.raises(StructuralError):
        unroot_series(F)


def test_vertex_marked_series_matches_census(family, census_tables):
    for g in (0, 2):
        F = family.F[g]
        series = vertex_series(g, unroot_series(F), F)
        for n in range(1, 7):
            _, marked = census_tables[n]
            ours = {mu: c for mu, c in census_coefficients(series, n).items() if c}
            theirs = {
                mu: Fraction(counts.vertex)
                for (h, mu), counts in marked.entries.items()
                if h == g
            }
            assert ours == theirs


def test_genus_zero_closed_forms(coords, family):
    f0, f02 = closed_f0_f02(12)
    assert coords.to_zu(family.F[0]) == f0
    assert coords.to_zu(family.F2[0]) == f02


def test_quadrangulation_specialization():
    assert quadrangulation_series(0, 5) == [1, 2, 9, 54, 378, 2916]
    assert quadrangulation_series(0, 10) == planar_quadrangulation_oracle(10)
    assert quadrangulation_series(1, 5) == [0, 0, 1, 20, 307, 4280]
    assert quadrangulation_series(1, 10) == torus_quadrangulation_oracle(10)


def test_compute_F_rejects_bad_arguments():
    with pytest.raises(ValueError):
        compute_F(-1, 5)
    with pytest.raises(ValueError):
        compute_F(0, 0)
