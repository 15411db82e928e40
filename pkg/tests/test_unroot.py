from fractions import Fraction

import pytest

from bipartite_maps.coords.theta import theta_closed
from bipartite_maps.errors import StructuralError
from bipartite_maps.greek.field import ONE, ZERO, GreekElem, laurent_to_elem
from bipartite_maps.greek.unroot import (
    GENUS_ONE_LOGS,
    GammaQuotient,
    LinearOperators,
    _value_at_origin,
    closed_form_series,
    integrate_euler,
    linear_ops,
    log_series,
    reference_l2,
    unroot_L,
)
from bipartite_maps.tutte.engine import census_coefficients

eta, gamma = GreekElem.atom("eta"), GreekElem.atom("gamma")
E = 1 - eta


def same(ours, theirs):
    trunc = min(ours.trunc, theirs.trunc)
    return ours.truncate(trunc) == theirs.truncate(trunc)


def theta_elem(name):
    return laurent_to_elem(theta_closed(name))


def test_operator_registry():
    assert LinearOperators.names() == ["box", "pi", "xi"]
    with pytest.raises(ValueError):
        linear_ops(theta_elem("eta_1"), "omega")


def test_xi_and_pi_on_theta_images():
    assert linear_ops(theta_elem("eta_2"), "xi") == GreekElem.atom("eta_1")
    assert linear_ops(theta_elem("eta_2"), "pi") == GreekElem.atom("eta_2")
    assert linear_ops(theta_elem("eta+gamma"), "xi") == gamma


def test_box_on_theta_of_eta_plus_gamma():
    quotient = linear_ops(theta_elem("eta+gamma"), "box")
    assert quotient == GammaQuotient(gamma * E)
    with pytest.raises(StructuralError):
        quotient.reduce()


def test_box_needs_odd_input():
    with pytest.raises(StructuralError):
        linear_ops(GreekElem.s(2) * eta, "xi")


def test_integrate_euler_logarithm():
    rational, log_eta, log_zeta = integrate_euler(eta / E)
    assert rational == ZERO
    assert log_eta == ONE
    assert log_zeta == ZERO


def test_integrate_euler_rational():
    rational, log_eta, log_zeta = integrate_euler(eta / E**2)
    assert rational == eta / E
    assert not log_eta and not log_zeta


def test_integrate_euler_rejects_constants():
    with pytest.raises(StructuralError):
        integrate_euler(ONE)


def test_log_series():
    series = log_series(6, Fraction(1), Fraction(0))
    assert series.coeff((2, 0, (2,))) == 3


def test_genus_one_logarithms(engine):
    L1 = engine.symbolic_L(1)
    assert (L1.log_eta, L1.log_zeta) == GENUS_ONE_LOGS == (Fraction(1, 24), Fraction(1, 8))
    assert same(closed_form_series(L1, 12), engine.unrooted(1, "zup"))


def test_unroot_rejects_genus_zero(engine):
    with pytest.raises(ValueError):
        unroot_L(0, engine.symbolic_F(1))


def test_printed_genus_two_vanishes_at_origin():
    assert _value_at_origin(reference_l2()) == 0


@pytest.mark.slow
def test_genus_two_unrooted(engine):
    L2 = engine.symbolic_L(2)
    assert L2.log_eta == 0 and L2.log_zeta == 0
    assert same(closed_form_series(L2, 12), engine.unrooted(2, "zup"))
    table, _ = engine.census(5)
    assert census_coefficients(engine.unrooted(2), 5).get((5,), 0) == table.count(2, (5,))
