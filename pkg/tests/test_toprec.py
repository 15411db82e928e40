from fractions import Fraction

import pytest

from bipartite_maps.greek.field import ONE, GreekElem, closed_form_terms, gf_eval
from bipartite_maps.greek.local import LocalExp
from bipartite_maps.greek.toprec import (
    check_pole_bounds,
    closed_form_f,
    compare_closed_forms,
    h_one,
    reference_f1,
    residue_sum,
    toprec_F,
)
from bipartite_maps.models import BasisTerm
from bipartite_maps.tutte.engine import closed_f0_f02

GENUS_ONE = {
    BasisTerm((), (), 1, 0, 5, "+"): Fraction(1, 2),
    BasisTerm((), (), 1, 0, 4, "+"): Fraction(-5, 4),
    BasisTerm((), (), 1, 0, 3, "+"): Fraction(7, 8),
    BasisTerm((1,), (), 2, 0, 3, "+"): Fraction(1, 12),
    BasisTerm((), (), 1, 0, 2, "+"): Fraction(-1, 16),
    BasisTerm((1,), (), 2, 0, 2, "+"): Fraction(-1, 8),
    BasisTerm((), (), 1, 0, 1, "+"): Fraction(-1, 16),
    BasisTerm((1,), (), 2, 0, 1, "+"): Fraction(1, 24),
    BasisTerm((), (), 0, 1, 1, "+"): Fraction(1, 32),
    BasisTerm((), (), 0, 1, 1, "-"): Fraction(-1, 32),
}


@pytest.fixture(scope="module")
def F1(engine):
    return engine.symbolic_F(1)


def same(ours, theirs):
    trunc = min(ours.trunc, theirs.trunc)
    return ours.truncate(trunc) == theirs.truncate(trunc)


def test_h_one_is_gamma_of_planar_series():
    _, gamma_f0 = closed_f0_f02(12)
    assert same(gf_eval(h_one(), 12), gamma_f0)


def test_residue_of_a_simple_pole():
    # (1 + s0) / (s0 (1 + s) (s0 - s)) / s has residue (1 + s0) / s0^2 at s = 0
    plus = LocalExp("+", {-1: ONE})
    assert residue_sum(plus, LocalExp("-", {})) == GreekElem.s(-2) + GreekElem.s(-1)


def test_genus_one_closed_form(F1):
    assert closed_form_f(1, F1).as_dict() == GENUS_ONE


def test_genus_one_series(engine, F1):
    assert same(gf_eval(F1, 12), engine.rooted(1, "zup"))


def test_genus_one_shape(F1):
    assert F1.is_odd_in_s()
    assert check_pole_bounds(1, F1)


def test_printed_genus_one_display_differs_in_two_terms(F1):
    diffs = compare_closed_forms(closed_form_terms(F1), closed_form_terms(reference_f1()))
    assert {term: (ours, theirs) for term, ours, theirs in diffs} == {
        BasisTerm((), (), 1, 0, 5, "+"): (Fraction(1, 2), Fraction(-1, 2)),
        BasisTerm((), (), 2, 1, 1, "+"): (Fraction(0), Fraction(1, 16)),
    }


def test_recursion_needs_lower_genera():
    with pytest.raises(ValueError):
        toprec_F(0)
    with pytest.raises(ValueError):
        toprec_F(2, {})


@pytest.mark.slow
def test_genus_two(engine):
    F2 = engine.symbolic_F(2)
    assert F2.is_odd_in_s()
    assert check_pole_bounds(2, F2)
    assert same(gf_eval(F2, 12), engine.rooted(2, "zup"))
    terms = closed_form_terms(F2)
    assert max(t.term.c for t in terms if t.term.sign == "+") <= 11
    assert max(t.term.c for t in terms if t.term.sign == "-") <= 3
