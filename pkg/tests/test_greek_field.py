from fractions import Fraction

import pytest

from bipartite_maps.coords.change_of_variables import binomial_w_series, s_power_series
from bipartite_maps.coords.theta import laurent
from bipartite_maps.errors import NonUnitError, StructuralError
from bipartite_maps.greek.field import (
    ONE,
    ONE_MINUS_ETA,
    ZERO,
    GreekElem,
    basis_term_elem,
    closed_form_elem,
    closed_form_terms,
    combo_to_elem,
    elem_to_laurent,
    gf_eval,
    gf_normalize_eval,
    laurent_to_elem,
    one_minus_w_inverse,
    one_plus_w_inverse,
)
from bipartite_maps.models import BasisTerm, ClosedFormTerm

eta, zeta, eta_1 = GreekElem.atom("eta"), GreekElem.atom("zeta"), GreekElem.atom("eta_1")
E = 1 - eta
Z = 1 + zeta


def test_canonical_form_cancels_denominators():
    assert E / E == ONE
    assert GreekElem.make(ONE_MINUS_ETA, a=1) == ONE
    assert (E**-2) * (E**2) == ONE
    assert (eta_1 / E) * E == eta_1
    assert (Z / (Z * Z)).b == 1


def test_units_and_non_units():
    assert (3 * GreekElem.s(2) / E).invert() == E * GreekElem.s(-2) / 3
    with pytest.raises(NonUnitError):
        eta.invert()
    with pytest.raises(NonUnitError):
        ZERO.invert()


def test_atom_index_bound():
    assert GreekElem.atom("eta_16")
    with pytest.raises(ValueError):
        GreekElem.atom("eta_17")


def test_parity_in_s():
    odd = one_minus_w_inverse() - one_plus_w_inverse()
    assert odd.is_odd_in_s()
    assert not one_minus_w_inverse().is_odd_in_s()
    assert odd == (GreekElem.s(-1) - GreekElem.s(1)) / 2


def test_laurent_conversion():
    q = laurent((-3, Fraction(1, 4)), (1, eta))
    assert elem_to_laurent(laurent_to_elem(q)) == q


def test_derivatives():
    assert (1 / E).diff("eta") == 1 / E**2
    assert (1 / Z).diff("zeta") == -1 / Z**2
    assert GreekElem.s(3).diff("s") == 3 * GreekElem.s(2)
    assert (eta_1**2 * zeta).diff("eta_1") == 2 * eta_1 * zeta


def test_series_evaluation(coords):
    N = 8
    assert gf_eval(GreekElem.s(1), N) == s_power_series(1, N)
    assert gf_eval(one_minus_w_inverse(), N) == binomial_w_series(-1, -1, N)
    product = gf_eval(eta * zeta / E, N)
    assert product == (gf_eval(eta, N) * gf_eval(zeta, N) * gf_eval(1 / E, N))
    assert gf_normalize_eval(eta, "eval", coords) == coords.atom("eta")
    with pytest.raises(ValueError):
        gf_normalize_eval(eta, "eval")


def test_combo_to_elem():
    assert combo_to_elem({"1": 2, "eta": 1}) == 2 + eta


@pytest.mark.parametrize(
    "term",
    [
        BasisTerm((1,), (), 2, 0, 3, "+"),
        BasisTerm((), (2, 1), 0, 1, 1, "-"),
        BasisTerm((2,), (1,), 1, 1, 0, ""),
        BasisTerm((), (), 0, 0, 0, ""),
    ],
)
def test_basis_terms_are_recovered(term):
    assert closed_form_terms(basis_term_elem(term)) == [ClosedFormTerm(term, Fraction(1))]


def test_closed_form_rewrites_eta_over_E():
    # eta / E^2 = 1/E^2 - 1/E
    terms = closed_form_terms(eta / E**2)
    assert {t.term: t.coeff for t in terms} == {
        BasisTerm((), (), 2, 0): 1,
        BasisTerm((), (), 1, 0): -1,
    }
    assert closed_form_elem(terms) == eta / E**2


def test_closed_form_rejects_gamma():
    with pytest.raises(StructuralError):
        closed_form_terms(GreekElem.atom("gamma") / E)
