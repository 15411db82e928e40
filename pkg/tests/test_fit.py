import pytest

from bipartite_maps.errors import InconsistentSystemError, TruncationError, UnderdeterminedFitError
from bipartite_maps.fit.basis import column_key, enumerate_basis, exponent_bound
from bipartite_maps.fit.solver import HELD_OUT_ORDERS, fit, fit_closed_form, fit_determined
from bipartite_maps.greek.toprec import closed_form_f
from bipartite_maps.models import BasisTerm


def test_rooted_basis_respects_degree_bounds():
    basis = enumerate_basis(1, "F")
    assert basis == sorted(basis, key=column_key)
    assert len(set(basis)) == len(basis)
    for term in basis:
        assert term.sign in ("+", "-")
        assert 1 <= term.c <= 5
        assert term.a + term.b <= exponent_bound(1, "F", term)
    assert not [t for t in basis if t.sign == "-" and t.c > 1]


def test_rooted_basis_holds_the_genus_one_terms(engine):
    basis = set(enumerate_basis(1, "F"))
    assert set(closed_form_f(1, engine.symbolic_F(1)).as_dict()) <= basis


def test_unrooted_basis():
    basis = enumerate_basis(2, "L")
    assert BasisTerm((), (), 0, 0) in basis
    assert all(t.sign == "" and t.c == 0 for t in basis)
    assert max(t.greek_size() for t in basis) == 3
    with pytest.raises(ValueError):
        enumerate_basis(1, "L")
    with pytest.raises(ValueError):
        enumerate_basis(0, "F")


def test_pruning_order_puts_small_terms_first():
    small = BasisTerm((), (), 1, 0, 1, "+")
    large = BasisTerm((1,), (), 1, 0, 1, "+")
    assert column_key(small) < column_key(large)
    assert column_key(BasisTerm((), (), 0, 0, 2, "+")) < column_key(BasisTerm((), (), 0, 0, 3, "+"))


def test_fit_needs_zu_series_with_room(engine):
    basis = enumerate_basis(1, "F")
    with pytest.raises(ValueError):
        fit(engine.rooted(1, "txp"), basis)
    short = engine.rooted(1, "zup").truncate(HELD_OUT_ORDERS)
    with pytest.raises(TruncationError):
        fit(short, basis)


def test_genus_one_fit_matches_recursion(engine):
    terms, report = engine.fit(1, "F")
    assert {t.term: t.coeff for t in terms} == closed_form_f(1, engine.symbolic_F(1)).as_dict()
    assert report.residual_zero
    assert report.validation_keys > 0
    assert report.rank + report.nullity == len(enumerate_basis(1, "F"))


def test_low_truncation_fit_is_underdetermined_not_inconsistent(engine):
    basis = enumerate_basis(1, "F")
    with pytest.raises(UnderdeterminedFitError) as info:
        fit(engine.rooted(1, "zup"), basis, 1, "F", workers=1)
    assert not isinstance(info.value, InconsistentSystemError)
    assert info.value.N == engine.N
    assert info.value.nullity > 0


def test_two_more_orders_pin_the_genus_one_fit(engine):
    target = engine.at_truncation(engine.N + 2).rooted(1, "zup")
    terms, report = fit(target, enumerate_basis(1, "F"), 1, "F", workers=1)
    assert {t.term: t.coeff for t in terms} == closed_form_f(1, engine.symbolic_F(1)).as_dict()
    assert report.validation_keys > 0


def test_fit_without_extra_orders_gives_up(engine):
    with pytest.raises(UnderdeterminedFitError):
        fit_determined(
            engine.fit_series(1, "F"),
            enumerate_basis(1, "F"),
            engine.N,
            1,
            "F",
            workers=1,
            extra_orders=0,
        )


def test_at_truncation_caches_engines(engine):
    assert engine.at_truncation(engine.N) is engine
    higher = engine.at_truncation(engine.N + 2)
    assert higher is engine.at_truncation(engine.N + 2)
    assert (higher.N, higher.n, higher.K) == (engine.N + 2, engine.n, engine.K)
    assert engine.fit_series(1, "F")(engine.N + 2) == higher.rooted(1, "zup")


def test_genus_one_unrooted_series_has_no_rational_fit(engine):
    with pytest.raises(InconsistentSystemError):
        fit_determined(engine.fit_series(1, "L"), enumerate_basis(2, "L"), engine.N, workers=1)


def test_fit_closed_form_reports(engine):
    reports = []
    closed = fit_closed_form(
        1, "F", engine.fit_series(1, "F"), engine.N, workers=1, on_report=reports.append
    )
    assert closed.g == 1
    assert len(reports) == 1
    assert reports[0].coefficients == closed.as_dict()
    assert engine.closed_form(1, method="fit").as_dict() == closed.as_dict()


@pytest.mark.slow
def test_genus_two_fits_match_recursion(engine):
    F2 = fit_closed_form(2, "F", engine.fit_series(2, "F"), engine.N, workers=1)
    assert F2.as_dict() == closed_form_f(2, engine.symbolic_F(2)).as_dict()
    L2 = fit_closed_form(2, "L", engine.fit_series(2, "L"), engine.N, workers=1)
    assert L2.as_dict() == engine.symbolic_L(2).as_dict()
