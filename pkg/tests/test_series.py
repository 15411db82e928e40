from fractions import Fraction

import pytest

from bipartite_maps.errors import (
    ChartMismatchError,
    DivergentSubstitutionError,
    GradingError,
    InconsistentSystemError,
    NonUnitError,
    StructuralError,
    TruncationError,
)
from bipartite_maps.series.linsolve import RowEchelon, solve_exact
from bipartite_maps.series.partitions import (
    PartSupport,
    make_partition,
    max_part_at_most,
    merge,
    multiplicity,
    partitions_of,
    remove_part,
)
from bipartite_maps.series.series import Chart, Series, ser_arith, ser_coeff, ser_compose
from bipartite_maps.series.univariate import binomial_series, uni, uni_inv, uni_mul


def tx(trunc, terms, graded=False):
    return Series.build(Chart.TXP, trunc, terms, graded)


# --- partitions ---


def test_partitions_are_weakly_decreasing():
    assert make_partition([1, 3, 2, 3]) == (3, 3, 2, 1)
    with pytest.raises(ValueError):
        make_partition([2, 0])


def test_partition_counts():
    assert [len(list(partitions_of(n))) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert list(partitions_of(4, max_part=2)) == [(2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_partition_helpers():
    mu = (4, 2, 2, 1)
    assert multiplicity(mu, 2) == 2
    assert multiplicity(mu, 3) == 0
    assert merge(mu, (3, 1)) == (4, 3, 2, 2, 1, 1)
    assert remove_part(mu, 2) == (4, 2, 1)
    with pytest.raises(KeyError):
        remove_part(mu, 5)


def test_part_support_filters():
    quadrangles = PartSupport(frozenset({2}), 1)
    assert quadrangles((2, 2, 2))
    assert quadrangles((3, 2, 2))
    assert not quadrangles((3, 2, 1))
    assert quadrangles.widen(1)((3, 2, 1))
    assert max_part_at_most(3)((3, 1))
    assert not max_part_at_most(3)((4,))


# --- series arithmetic ---


def test_build_drops_zeros_and_merges_keys():
    f = tx(3, [((1, 0, (1,)), 2), ((1, 0, (1,)), -2), ((2, 1, (1,)), Fraction(1, 3))])
    assert dict(f.terms) == {(2, 1, (1,)): Fraction(1, 3)}


def test_coefficient_beyond_truncation_raises():
    f = tx(2, {(1, 1, ()): 1})
    assert f.coeff((1, 1, [])) == 1
    assert f.coeff((2, 0, [])) == 0
    with pytest.raises(TruncationError):
        f.coeff((3, 0, []))


def test_arithmetic_keeps_smaller_truncation():
    a = tx(4, {(0, 0, ()): 1, (1, 0, (1,)): 1})
    b = tx(2, {(1, 1, ()): 1})
    assert (a + b).trunc == 2
    product = a * b
    assert product.trunc == 2
    assert dict(product.terms) == {(1, 1, ()): 1, (2, 1, (1,)): 1}


def test_named_arithmetic():
    a = tx(3, {(1, 0, ()): 2, (2, 1, (1,)): 1})
    assert ser_arith(a, Fraction(1, 2), "scale") == tx(3, {(1, 0, ()): 1, (2, 1, (1,)): Fraction(1, 2)})
    assert not ser_arith(a, a, "sub").terms
    assert ser_coeff(ser_arith(a, a, "mul"), (2, 0, [])) == 4
    with pytest.raises(TypeError):
        ser_arith(a, 3, "add")


def test_charts_do_not_mix():
    a = tx(3, {(1, 0, ()): 1})
    b = Series.build(Chart.ZUP, 3, {(1, 0, ()): 1})
    with pytest.raises(ChartMismatchError):
        a + b


def test_inverse_of_one_minus_t_is_geometric():
    f = tx(6, {(0, 0, ()): 1, (1, 0, ()): -1})
    assert dict(f.inverse().terms) == {(n, 0, ()): 1 for n in range(7)}
    with pytest.raises(NonUnitError):
        tx(6, {(1, 0, ()): 1}).inverse()


def test_power_and_division():
    one_plus_t = tx(5, {(0, 0, ()): 1, (1, 0, ()): 1})
    cube = one_plus_t**3
    assert [cube.coeff((n, 0, ())) for n in range(5)] == [1, 3, 3, 1, 0]
    assert (cube / one_plus_t) == one_plus_t**2


def test_graded_flag_is_enforced():
    with pytest.raises(GradingError):
        tx(3, {(2, 1, ()): 1}, graded=True)
    f = tx(3, {(2, 1, (1,)): 1}, graded=True)
    assert f.check_grading()


def test_compose_substitutes_expansion_variable():
    f = tx(3, {(0, 0, ()): 1, (1, 0, ()): 1, (2, 0, ()): 1})
    g = tx(3, {(1, 0, ()): 2})
    composed = ser_compose(f, {"t": g})
    assert [composed.coeff((n, 0, ())) for n in range(3)] == [1, 2, 4]


def test_compose_rejects_constant_term():
    f = tx(3, {(1, 0, ()): 1})
    with pytest.raises(DivergentSubstitutionError):
        ser_compose(f, {"t": tx(3, {(0, 0, ()): 1})})


def test_derivatives():
    f = tx(4, {(2, 1, (2, 2)): 3})
    assert dict(f.diff("t").terms) == {(1, 1, (2, 2)): 6}
    assert dict(f.diff("x").terms) == {(2, 0, (2, 2)): 3}
    assert dict(f.diff_p(2).terms) == {(2, 1, (2,)): 6}
    assert dict(f.specialize_p({2: Fraction(1, 2)}).terms) == {(2, 1, ()): Fraction(3, 4)}


# --- exact linear algebra ---


def test_row_echelon_solves_and_zeroes_free_columns():
    echelon = RowEchelon(3)
    assert echelon.add({0: 1, 1: 1}, Fraction(3)) == "pivot"
    assert echelon.add({1: 2}, Fraction(2)) == "pivot"
    assert echelon.add({0: 2, 1: 4}, Fraction(8)) == "redundant"
    assert echelon.free_columns() == [2]
    assert echelon.solve() == [2, 1, 0]


def test_row_echelon_reports_conflicts():
    echelon = RowEchelon(1)
    echelon.add({0: 1}, Fraction(1))
    assert echelon.add({0: 2}, Fraction(3)) == "inconsistent"
    with pytest.raises(InconsistentSystemError):
        echelon.solve()


def test_solve_exact_needs_full_rank():
    assert solve_exact([{0: 2}, {1: 3}], [Fraction(1), Fraction(1)], 2) == [
        Fraction(1, 2),
        Fraction(1, 3),
    ]
    with pytest.raises(StructuralError):
        solve_exact([{0: 1, 1: 1}], [Fraction(1)], 2)


# --- univariate series ---


def test_univariate_helpers():
    ones = uni_inv(uni([1, -1], 5))
    assert ones == [1] * 6
    sqrt = binomial_series(Fraction(1, 2), Fraction(1), 5)
    assert uni_mul(sqrt, sqrt) == uni([1, 1], 5)
