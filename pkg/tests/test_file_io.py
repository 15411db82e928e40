import json
from fractions import Fraction

import pytest

from bipartite_maps.models import BasisTerm, ClosedFormL, ClosedFormTerm, CheckResult
from bipartite_maps.series.series import Chart
from bipartite_maps.utils import (
    census_from_rows,
    census_rows,
    closed_form_doc,
    closed_form_from_doc,
    kernel_doc,
    marked_from_rows,
    marked_rows,
    rational_to_str,
    render,
    rooted_from_rows,
    rooted_rows,
    save_json,
    series_from_rows,
    series_rows,
    suite_report,
)


def test_census_tables_survive_json(tmp_path, census_tables, engine):
    table, marked = census_tables[4]
    path = str(tmp_path / "tables" / "census.json")
    save_json(path, {"census": census_rows(table), "marked": marked_rows(marked)})
    with open(path) as f:
        data = json.load(f)
    assert census_from_rows(4, data["census"]).entries == table.entries
    assert marked_from_rows(4, data["marked"]).entries == marked.entries
    rooted = engine.rooted_census(4)
    assert rooted_from_rows(4, rooted_rows(rooted)).entries == rooted.entries


def test_series_rows_keep_exact_coefficients(family):
    F1 = family.F[1]
    rows = json.loads(render(series_rows(F1), "json"))
    assert all("/" in row["coeff"] for row in rows)
    assert series_from_rows(Chart.TXP, F1.trunc, rows) == F1


def test_closed_form_documents(engine):
    F1 = engine.closed_form(1)
    doc = closed_form_doc(F1)
    assert doc["target"] == "F" and doc["log_eta"] == "0/1"
    assert closed_form_from_doc(json.loads(json.dumps(doc))).as_dict() == F1.as_dict()

    L = ClosedFormL(
        1, [ClosedFormTerm(BasisTerm((1,), (), 1, 0), Fraction(-1, 3))], Fraction(1, 24), Fraction(1, 8)
    )
    back = closed_form_from_doc(closed_form_doc(L))
    assert (back.log_eta, back.log_zeta) == (Fraction(1, 24), Fraction(1, 8))
    assert back.as_dict() == L.as_dict()


def test_rational_strings():
    assert rational_to_str(3) == "3/1"
    assert rational_to_str(Fraction(-6, 4)) == "-3/2"


def test_latex_closed_form():
    L = ClosedFormL(
        2,
        [
            ClosedFormTerm(BasisTerm((), (), 0, 0), Fraction(1, 120)),
            ClosedFormTerm(BasisTerm((1,), (), 2, 0), Fraction(-7, 2)),
        ],
    )
    latex = render(closed_form_doc(L), "latex")
    assert latex.startswith("L_{2} = ")
    assert "\\frac{1}{120}" in latex
    assert "- \\frac{7}{2}\\,\\frac{\\eta_{1}}{(1-\\eta)^{2}}" in latex
    assert "\\ln" not in latex


def test_tabular_formats(census_tables):
    table, _ = census_tables[2]
    rows = census_rows(table)
    csv_text = render(rows, "csv")
    assert csv_text.splitlines()[0] == "g,mu,count"
    assert len(csv_text.splitlines()) == 3
    text = render(rows, "text")
    assert "g=0, mu=[2], count=2" in text
    assert render(rows, "latex").startswith("\\begin{tabular}{rrr}")
    with pytest.raises(ValueError):
        render(rows, "yaml")


def test_suite_report_rows():
    results = [
        CheckResult("greek", "theta_on_atoms", True, 0.25, "ok"),
        CheckResult("greek", "d_on_atoms", False, 0.5, "mismatch"),
    ]
    report = suite_report("greek", results)
    assert report["passed"] is False
    assert report["seconds"] == 0.75
    assert [row["name"] for row in report["checks"]] == ["d_on_atoms", "theta_on_atoms"]
    assert render([report], "csv").splitlines()[0] == "suite,name,passed,seconds,detail"


def test_kernel_document(engine):
    doc = kernel_doc(engine.kernel(3))
    assert doc["K"] == 3
    assert doc["factorization"] and doc["antisymmetry"]
    assert doc["small_zeros"] + doc["large_zeros"] == 4
    assert set(doc["taylor"]) == {f"G_{a}^{s}" for a in range(4) for s in "+-"}
