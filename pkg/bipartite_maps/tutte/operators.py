"""
Series-level operators of the loop equation.

Each operator exists at two levels: on a slice (one fixed t-order, keyed by
(k, mu)) for the order-by-order solver, and on a whole Series. The Series
versions are registered by name so callers can look them up.
"""

from collections import defaultdict
from fractions import Fraction
from typing import Callable

from bipartite_maps.series.partitions import (
    Partition,
    merge,
    multiplicities,
    remove_part,
)
from bipartite_maps.series.series import Chart, Series, Slice


def series_operator(func):
    """Register a function as a named series operator."""
    SeriesOperators.register(func.__name__.removeprefix("apply_"), func)
    return func


class SeriesOperators:
    _registry: dict[str, Callable[[Series], Series]] = {}

    @classmethod
    def register(cls, name, func):
        cls._registry[name] = func

    @classmethod
    def get(cls, name):
        return cls._registry.get(name)

    @classmethod
    def names(cls) -> list[str]:
        return sorted(cls._registry)


# ----------------------------------------------------------------------
# Slice level
# ----------------------------------------------------------------------


def omega_slice(s: Slice) -> Slice:
    out: dict[tuple[int, Partition], Fraction] = defaultdict(Fraction)
    for (k, mu), c in s.items():
        for j in range(1, k + 1):
            out[(k - j, merge(mu, (j,)))] += c
    return {key: c for key, c in out.items() if c}


def gamma_slice(s: Slice) -> Slice:
    out: dict[tuple[int, Partition], Fraction] = defaultdict(Fraction)
    for (k, mu), c in s.items():
        for part, mult in multiplicities(mu).items():
            out[(k + part, remove_part(mu, part))] += c * part * mult
    return {key: c for key, c in out.items() if c}


def _map_terms(f: Series, rule, graded: bool) -> Series:
    out: dict = defaultdict(Fraction)
    for (n, k, mu), c in f.terms.items():
        for key, value in rule(n, k, mu, c):
            out[key] += value
    return Series(f.chart, f.trunc, {key: c for key, c in out.items() if c}, graded)


# ----------------------------------------------------------------------
# Series level
# ----------------------------------------------------------------------


@series_operator
def apply_delta(f: Series) -> Series:
    """(F(x) - F(0)) / x."""

    def rule(n, k, mu, c):
        if k:
            yield (n, k - 1, mu), c

    return _map_terms(f, rule, graded=False)


@series_operator
def apply_omega(f: Series) -> Series:
    """Sum over k >= 1 of p_k Delta^k."""

    def rule(n, k, mu, c):
        for j in range(1, k + 1):
            yield (n, k - j, merge(mu, (j,))), c

    return _map_terms(f, rule, graded=f.graded)


@series_operator
def apply_gamma(f: Series) -> Series:
    """Sum over k of k x^k d/dp_k, the new x-power merged into the old one."""

    def rule(n, k, mu, c):
        for part, mult in multiplicities(mu).items():
            yield (n, k + part, remove_part(mu, part)), c * part * mult

    return _map_terms(f, rule, graded=f.graded)


apply_gamma_series = apply_gamma


@series_operator
def apply_xi(f: Series) -> Series:
    """x^k -> p_k / k; terms free of x are dropped."""

    def rule(n, k, mu, c):
        if k:
            yield (n, 0, merge(mu, (k,))), c / k

    return _map_terms(f, rule, graded=f.graded)


@series_operator
def apply_pi(f: Series) -> Series:
    """x^k -> p_k; terms free of x are dropped."""

    def rule(n, k, mu, c):
        if k:
            yield (n, 0, merge(mu, (k,))), c

    return _map_terms(f, rule, graded=f.graded)


def apply_operator(name: str, f: Series) -> Series:
    op = SeriesOperators.get(name)
    if op is None:
        raise ValueError(
            f"Unknown series operator {name!r}; known: {SeriesOperators.names()}"
        )
    if f.chart is not Chart.TXP:
        raise ValueError(f"Operator {name!r} acts on (t, x, p) series")
    return op(f)
