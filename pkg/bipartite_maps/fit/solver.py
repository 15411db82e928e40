"""
Exact fit of a closed-form ansatz to a series.

Keys of z-order at most N - 3 determine the coefficients; the remaining
orders are held out and must be reproduced exactly. A held-out miss that
the full system still admits means the truncation is too low to pin every
coefficient; `fit_determined` then retries with more orders.
"""

import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, NoReturn, Sequence

from tqdm import tqdm

from bipartite_maps.census.census import default_workers
from bipartite_maps.errors import (
    InconsistentSystemError,
    TruncationError,
    UnderdeterminedFitError,
)
from bipartite_maps.fit.basis import Target, enumerate_basis, expand_term, exponent_bound
from bipartite_maps.models import (
    BasisTerm,
    ClosedFormF,
    ClosedFormL,
    ClosedFormTerm,
    FitReport,
)
from bipartite_maps.series.linsolve import RowEchelon
from bipartite_maps.series.partitions import Partition, max_part_at_most
from bipartite_maps.series.series import Chart, Series

logger = logging.getLogger(__name__)

HELD_OUT_ORDERS = 3
FIT_ORDER_STEP = 2
FIT_EXTRA_ORDERS = 6

Key = tuple[int, int, Partition]


def expand_columns(basis: Sequence[BasisTerm], N: int, workers: int | None = None) -> list[Series]:
    workers = workers or default_workers()
    show = sys.stderr.isatty() and logger.isEnabledFor(logging.INFO)
    if workers == 1 or len(basis) < 8:
        return [expand_term(term, N) for term in tqdm(basis, desc="columns", disable=not show)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(
            tqdm(
                pool.map(expand_term, basis, [N] * len(basis), chunksize=4),
                total=len(basis),
                desc="columns",
                disable=not show,
            )
        )


def _keys_by_role(target: Series, columns: list[Series], N: int) -> tuple[list[Key], list[Key]]:
    keys: set[Key] = set(target.terms)
    for col in columns:
        keys.update(col.terms)
    ordered = sorted(keys)
    fit_keys = [key for key in ordered if key[0] <= N - HELD_OUT_ORDERS]
    held_out = [key for key in ordered if key[0] > N - HELD_OUT_ORDERS]
    return fit_keys, held_out


def _explain_miss(
    echelon: RowEchelon,
    by_key: dict[Key, dict[int, Fraction]],
    target: Series,
    held_out: list[Key],
    missed: Key,
    ncols: int,
    N: int,
) -> NoReturn:
    """Raise for a held-out miss: a conflict over all orders, or too few orders to pin the free columns."""
    for key in held_out:
        echelon.add(by_key.get(key, {}), target.terms.get(key, Fraction(0)))
    if echelon.conflicts:
        raise InconsistentSystemError(
            f"No combination of {ncols} basis terms matches the series "
            f"({echelon.conflicts} conflicting orders up to z^{N})"
        )
    nullity = ncols - echelon.rank
    raise UnderdeterminedFitError(
        f"Fit through z^{N} leaves {nullity} free columns; "
        f"the held-out coefficient {missed} is not pinned",
        N,
        nullity,
    )


def fit(
    target: Series,
    basis: Sequence[BasisTerm],
    g: int | None = None,
    kind: Target = "F",
    K: int | None = None,
    workers: int | None = None,
) -> tuple[list[ClosedFormTerm], FitReport]:
    """Coefficients c_T with sum_T c_T T = target on every key through z^N.

    With K, target and columns are restricted to monomials in p_1..p_K.
    """
    if target.chart != Chart.ZUP:
        raise ValueError("fit works on (z, u, p) series")
    N = target.trunc
    if N <= HELD_OUT_ORDERS:
        raise TruncationError(
            f"Truncation {N} leaves no fitting orders after holding out {HELD_OUT_ORDERS}"
        )
    columns = expand_columns(basis, N, workers)
    if K is not None:
        keep = max_part_at_most(K)
        target = target.restrict(keep)
        columns = [col.restrict(keep) for col in columns]
    fit_keys, held_out = _keys_by_role(target, columns, N)

    by_key: dict[Key, dict[int, Fraction]] = {}
    for j, col in enumerate(columns):
        for key, c in col.terms.items():
            by_key.setdefault(key, {})[j] = c

    echelon = RowEchelon(len(basis))
    for key in fit_keys:
        echelon.add(by_key.get(key, {}), target.terms.get(key, Fraction(0)))
    if echelon.conflicts:
        raise InconsistentSystemError(
            f"No combination of {len(basis)} basis terms matches the series "
            f"({echelon.conflicts} conflicting orders up to z^{N - HELD_OUT_ORDERS})"
        )
    solution = echelon.solve()

    for key in held_out:
        value = sum((v * solution[j] for j, v in by_key.get(key, {}).items()), Fraction(0))
        if value != target.terms.get(key, Fraction(0)):
            _explain_miss(echelon, by_key, target, held_out, key, len(basis), N)

    pruned = [basis[j] for j in echelon.free_columns()]
    coefficients = {basis[j]: c for j, c in enumerate(solution) if c}
    relaxed = []
    if g is not None:
        relaxed = [t for t in coefficients if t.a + t.b < exponent_bound(g, kind, t)]
    notes = []
    if pruned:
        notes.append(f"{len(pruned)} dependent columns set to zero")
    if relaxed:
        notes.append(f"{len(relaxed)} terms with a + b below the degree bound")
    report = FitReport(
        coefficients,
        echelon.rank,
        len(basis) - echelon.rank,
        len(fit_keys),
        len(held_out),
        True,
        pruned,
        relaxed,
        notes,
    )
    logger.info(
        f"Fit: {len(basis)} columns, rank {report.rank}, {len(coefficients)} nonzero, "
        f"{len(held_out)} held-out keys reproduced"
    )
    terms = [ClosedFormTerm(t, c) for t, c in coefficients.items()]
    return terms, report


def fit_determined(
    series_at: Callable[[int], Series],
    basis: Sequence[BasisTerm],
    N: int,
    g: int | None = None,
    kind: Target = "F",
    K: int | None = None,
    workers: int | None = None,
    extra_orders: int = FIT_EXTRA_ORDERS,
) -> tuple[list[ClosedFormTerm], FitReport]:
    """Fit the series truncated at N, raising N until the held-out orders are pinned.

    series_at(M) returns the (z, u, p) target truncated at z^M.
    """
    for M in range(N, N + extra_orders + 1, FIT_ORDER_STEP):
        try:
            return fit(series_at(M), basis, g, kind, K, workers)
        except UnderdeterminedFitError as e:
            if M + FIT_ORDER_STEP > N + extra_orders:
                raise
            logger.warning(f"{e}; retrying at z^{M + FIT_ORDER_STEP}")
    raise TruncationError(f"No truncation between {N} and {N + extra_orders} to fit at")


def fit_closed_form(
    g: int,
    kind: Target,
    series_at: Callable[[int], Series],
    N: int,
    K: int | None = None,
    workers: int | None = None,
    on_report: Callable[[FitReport], None] | None = None,
) -> ClosedFormF | ClosedFormL:
    terms, report = fit_determined(series_at, enumerate_basis(g, kind), N, g, kind, K, workers)
    if on_report is not None:
        on_report(report)
    if kind == "F":
        return ClosedFormF(g, terms)
    return ClosedFormL(g, terms)
