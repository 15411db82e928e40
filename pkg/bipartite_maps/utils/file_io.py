import json
import os
from fractions import Fraction
from typing import Any, Iterable

from bipartite_maps.coords.kernel import KernelData, count_small_zeros
from bipartite_maps.coords.taylor import taylor_kernel
from bipartite_maps.models import (
    BasisTerm,
    CensusTable,
    CheckResult,
    ClosedFormF,
    ClosedFormL,
    ClosedFormTerm,
    MarkedCounts,
    MarkedTotals,
    RootedTable,
)
from bipartite_maps.series.partitions import Partition, make_partition
from bipartite_maps.series.series import Chart, Series

from .types import (
    CensusRow,
    CheckResultRow,
    ClosedFormDoc,
    ClosedFormTermRow,
    KernelDoc,
    MarkedRow,
    RootedRow,
    SeriesRow,
    SuiteReport,
)


def save_json(path: str, data: Any) -> None:
    """Writes data as indented JSON, creating the parent directory if needed."""
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w") as f:
        json.dump(data, f, indent=2)


def rational_to_str(c: Fraction | int) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def rational_from_str(text: str) -> Fraction:
    return Fraction(text)


def partition_to_list(mu: Partition) -> list[int]:
    return list(mu)


def partition_from_list(parts: Iterable[int]) -> Partition:
    return make_partition(int(p) for p in parts)


# --- Census tables ---


def census_rows(table: CensusTable) -> list[CensusRow]:
    return [
        {"g": g, "mu": partition_to_list(mu), "count": count}
        for (g, mu), count in sorted(table.entries.items())
    ]


def census_from_rows(n: int, rows: list[CensusRow]) -> CensusTable:
    return CensusTable(n, {(row["g"], partition_from_list(row["mu"])): row["count"] for row in rows})


def rooted_rows(table: RootedTable) -> list[RootedRow]:
    return [
        {"g": g, "k": k, "mu": partition_to_list(mu), "count": count}
        for (g, k, mu), count in sorted(table.entries.items())
    ]


def rooted_from_rows(n: int, rows: list[RootedRow]) -> RootedTable:
    return RootedTable(
        n, {(row["g"], row["k"], partition_from_list(row["mu"])): row["count"] for row in rows}
    )


def marked_rows(marked: MarkedTotals) -> list[MarkedRow]:
    return [
        {
            "g": g,
            "mu": partition_to_list(mu),
            "vertex": counts.vertex,
            "face": counts.face,
            "edge": counts.edge,
        }
        for (g, mu), counts in sorted(marked.entries.items())
    ]


def marked_from_rows(n: int, rows: list[MarkedRow]) -> MarkedTotals:
    return MarkedTotals(
        n,
        {
            (row["g"], partition_from_list(row["mu"])): MarkedCounts(
                row["vertex"], row["face"], row["edge"]
            )
            for row in rows
        },
    )


# --- Series ---


def series_rows(f: Series) -> list[SeriesRow]:
    return [
        {"n": n, "k": k, "mu": partition_to_list(mu), "coeff": rational_to_str(c)}
        for (n, k, mu), c in sorted(f.terms.items())
    ]


def series_from_rows(chart: Chart, trunc: int, rows: list[SeriesRow]) -> Series:
    return Series.build(
        chart,
        trunc,
        {
            (row["n"], row["k"], partition_from_list(row["mu"])): rational_from_str(row["coeff"])
            for row in rows
        },
    )


# --- Closed forms ---


def term_row(term: ClosedFormTerm) -> ClosedFormTermRow:
    t = term.term
    return {
        "alpha": partition_to_list(t.alpha),
        "beta": partition_to_list(t.beta),
        "a": t.a,
        "b": t.b,
        "c": t.c,
        "sign": t.sign,
        "coeff_num": term.coeff.numerator,
        "coeff_den": term.coeff.denominator,
    }


def term_from_row(row: ClosedFormTermRow) -> ClosedFormTerm:
    basis = BasisTerm(
        partition_from_list(row["alpha"]),
        partition_from_list(row["beta"]),
        row["a"],
        row["b"],
        row["c"],
        row["sign"],
    )
    return ClosedFormTerm(basis, Fraction(row["coeff_num"], row["coeff_den"]))


def closed_form_doc(form: ClosedFormF | ClosedFormL) -> ClosedFormDoc:
    is_l = isinstance(form, ClosedFormL)
    return {
        "g": form.g,
        "target": "L" if is_l else "F",
        "terms": [term_row(t) for t in form.terms],
        "log_eta": rational_to_str(form.log_eta if is_l else 0),
        "log_zeta": rational_to_str(form.log_zeta if is_l else 0),
    }


def closed_form_from_doc(doc: ClosedFormDoc) -> ClosedFormF | ClosedFormL:
    terms = [term_from_row(row) for row in doc["terms"]]
    if doc["target"] == "F":
        return ClosedFormF(doc["g"], terms)
    return ClosedFormL(
        doc["g"], terms, rational_from_str(doc["log_eta"]), rational_from_str(doc["log_zeta"])
    )


# --- Verification results ---


def check_row(result: CheckResult) -> CheckResultRow:
    return {
        "suite": result.suite,
        "name": result.name,
        "passed": result.passed,
        "seconds": round(result.seconds, 3),
        "detail": result.detail,
    }


def suite_report(suite: str, results: list[CheckResult]) -> SuiteReport:
    return {
        "suite": suite,
        "passed": all(r.passed for r in results),
        "seconds": round(sum(r.seconds for r in results), 3),
        "checks": [check_row(r) for r in sorted(results, key=lambda r: r.name)],
    }


# --- Kernel ---


def kernel_doc(kernel: KernelData, seed: int = 0, max_order: int = 3) -> KernelDoc:
    small, large = count_small_zeros(kernel, seed)
    taylor = {}
    for a in range(max_order + 1):
        for sign, label in ((1, "+"), (-1, "-")):
            combo = taylor_kernel(sign, a)
            taylor[f"G_{a}^{label}"] = {name: rational_to_str(c) for name, c in sorted(combo.items())}
    return {
        "K": kernel.K,
        "nu_degree": kernel.nu_degree(),
        "nu_terms": len(kernel.nu.terms()),
        "factorization": kernel.factorization_holds(),
        "antisymmetry": kernel.antisymmetry_holds(),
        "small_zeros": small,
        "large_zeros": large,
        "taylor": taylor,
    }
