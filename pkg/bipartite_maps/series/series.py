"""
Sparse truncated formal power series over the rationals.

A series lives in one of two charts: (t; x; p_1, p_2, ...) or
(z; u; p_1, p_2, ...). Keys are (n, k, mu): the exponent of the expansion
variable t or z, the exponent of the catalytic variable x or u, and the
partition mu recording the monomial p_mu. Truncation is by the first
exponent only.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Literal, Mapping

from bipartite_maps.errors import (
    ChartMismatchError,
    DivergentSubstitutionError,
    GradingError,
    NonUnitError,
    TruncationError,
)
from bipartite_maps.series.partitions import (
    EMPTY,
    Partition,
    make_partition,
    merge,
    multiplicity,
    remove_part,
)

logger = logging.getLogger(__name__)

Key = tuple[int, int, Partition]
Slice = dict[tuple[int, Partition], Fraction]
Rational = Fraction | int


class Chart(str, Enum):
    TXP = "txp"
    ZUP = "zup"

    @property
    def variables(self) -> tuple[str, str]:
        return ("t", "x") if self is Chart.TXP else ("z", "u")


def _as_fraction(c: Rational) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


@dataclass(frozen=True, eq=False)
class Series:
    chart: Chart
    trunc: int
    terms: Mapping[Key, Fraction] = field(default_factory=dict)
    graded: bool = False

    def __post_init__(self):
        if self.graded:
            for n, k, mu in self.terms:
                if n != k + sum(mu):
                    raise GradingError(
                        f"map grading n = k + |mu| violated at key {(n, k, mu)}"
                    )

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def build(
        cls,
        chart: Chart,
        trunc: int,
        terms: Mapping[Key, Rational] | Iterable[tuple[Key, Rational]],
        graded: bool = False,
    ) -> "Series":
        """Clean construction: drops zeros and keys above truncation."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Key, Fraction] = {}
        for (n, k, mu), c in items:
            if n > trunc or not c:
                continue
            if n < 0 or k < 0:
                raise ValueError(f"Negative exponent in key {(n, k, mu)}")
            key = (n, k, make_partition(mu))
            value = clean.get(key, Fraction(0)) + _as_fraction(c)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        return cls(chart, trunc, clean, graded)

    @classmethod
    def zero(cls, chart: Chart, trunc: int) -> "Series":
        return cls(chart, trunc, {}, True)

    @classmethod
    def constant(cls, chart: Chart, trunc: int, c: Rational = 1) -> "Series":
        return cls.build(chart, trunc, {(0, 0, EMPTY): c}, graded=True)

    @classmethod
    def monomial(
        cls,
        chart: Chart,
        trunc: int,
        n: int = 0,
        k: int = 0,
        mu: Iterable[int] = EMPTY,
        c: Rational = 1,
    ) -> "Series":
        return cls.build(chart, trunc, {(n, k, tuple(mu)): c})

    @classmethod
    def variable(cls, chart: Chart, trunc: int, name: str) -> "Series":
        first, second = chart.variables
        if name == first:
            return cls.monomial(chart, trunc, n=1)
        if name == second:
            return cls.monomial(chart, trunc, k=1)
        if name.startswith("p") and name[1:].isdigit():
            return cls.monomial(chart, trunc, mu=(int(name[1:]),))
        raise ValueError(f"Unknown variable {name!r} for chart {chart.value}")

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.chart is other.chart
            and self.trunc == other.trunc
            and dict(self.terms) == dict(other.terms)
        )

    __hash__ = None

    def __repr__(self) -> str:
        shown = sorted(self.terms.items())[:6]
        more = "" if len(self.terms) <= 6 else f", ... ({len(self.terms)} terms)"
        return f"Series({self.chart.value}, trunc={self.trunc}, {shown}{more})"

    def items(self):
        return self.terms.items()

    def coeff(self, key: tuple[int, int, Iterable[int]]) -> Fraction:
        return ser_coeff(self, key)

    def constant_term(self) -> Fraction:
        return self.terms.get((0, 0, EMPTY), Fraction(0))

    def valuation(self) -> int | None:
        """Smallest t- (or z-) exponent present."""
        return min((n for n, _, _ in self.terms), default=None)

    def is_u_free(self) -> bool:
        return all(k == 0 for _, k, _ in self.terms)

    def check_grading(self) -> bool:
        return all(n == k + sum(mu) for n, k, mu in self.terms)

    def by_order(self) -> dict[int, Slice]:
        out: dict[int, Slice] = defaultdict(dict)
        for (n, k, mu), c in self.terms.items():
            out[n][(k, mu)] = c
        return dict(out)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _check_chart(self, other: "Series") -> None:
        if self.chart is not other.chart:
            raise ChartMismatchError(
                f"Cannot combine {self.chart.value} series with {other.chart.value} series"
            )

    def __add__(self, other) -> "Series":
        if isinstance(other, Series):
            return ser_arith(self, other, "add")
        return ser_arith(self, Series.constant(self.chart, self.trunc, other), "add")

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return self.scale(-1)

    def __sub__(self, other) -> "Series":
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def __mul__(self, other) -> "Series":
        if isinstance(other, Series):
            return ser_arith(self, other, "mul")
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Series":
        if isinstance(other, Series):
            return self * other.inverse()
        return self.scale(Fraction(1) / _as_fraction(other))

    def __pow__(self, e: int) -> "Series":
        if e < 0:
            return self.inverse() ** (-e)
        result = Series.constant(self.chart, self.trunc)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: Rational) -> "Series":
        return ser_arith(self, c, "scale")

    def inverse(self) -> "Series":
        """Multiplicative inverse; the constant term must be the only order-0 term."""
        c0 = self.constant_term()
        if not c0 or any(n == 0 and (k, mu) != (0, EMPTY) for n, k, mu in self.terms):
            raise NonUnitError(f"Series {self!r} is not a unit")
        orders = self.by_order()
        inv0 = 1 / c0
        h: dict[int, Slice] = {0: {(0, EMPTY): inv0}}
        for n in range(1, self.trunc + 1):
            acc: dict[tuple[int, Partition], Fraction] = defaultdict(Fraction)
            for i in range(1, n + 1):
                gi = orders.get(i)
                if not gi or not h.get(n - i):
                    continue
                for key, c in mul_slices(gi, h[n - i]).items():
                    acc[key] -= c * inv0
            h[n] = {key: c for key, c in acc.items() if c}
        terms = {
            (n, k, mu): c for n, sl in h.items() for (k, mu), c in sl.items()
        }
        return Series(self.chart, self.trunc, terms, self.graded)

    # ------------------------------------------------------------------
    # Structural maps
    # ------------------------------------------------------------------

    def truncate(self, trunc: int) -> "Series":
        trunc = min(trunc, self.trunc)
        terms = {key: c for key, c in self.terms.items() if key[0] <= trunc}
        return Series(self.chart, trunc, terms, self.graded)

    def restrict(self, keep: Callable[[Partition], bool]) -> "Series":
        terms = {key: c for key, c in self.terms.items() if keep(key[2])}
        return Series(self.chart, self.trunc, terms, self.graded)

    def shift(self, dn: int = 0, dk: int = 0, mu: Partition = EMPTY) -> "Series":
        """Multiply by the monomial t^dn x^dk p_mu (or z^dn u^dk p_mu)."""
        terms = {}
        for (n, k, nu), c in self.terms.items():
            if n + dn > self.trunc:
                continue
            if n + dn < 0 or k + dk < 0:
                raise ValueError("shift produced a negative exponent")
            terms[(n + dn, k + dk, merge(nu, mu))] = c
        graded = self.graded and dn == dk + sum(mu)
        return Series(self.chart, self.trunc, terms, graded)

    def with_grading(self, graded: bool = True) -> "Series":
        return Series(self.chart, self.trunc, self.terms, graded)

    def map_coefficients(self, f: Callable[[Key, Fraction], Rational]) -> "Series":
        return Series.build(
            self.chart, self.trunc, ((key, f(key, c)) for key, c in self.terms.items()),
            graded=self.graded,
        )

    def diff(self, name: str) -> "Series":
        """Derivative with respect to the expansion or catalytic variable."""
        first, second = self.chart.variables
        terms = {}
        if name == first:
            for (n, k, mu), c in self.terms.items():
                if n:
                    terms[(n - 1, k, mu)] = c * n
            return Series(self.chart, self.trunc - 1, terms)
        if name == second:
            for (n, k, mu), c in self.terms.items():
                if k:
                    terms[(n, k - 1, mu)] = c * k
            return Series(self.chart, self.trunc, terms)
        raise ValueError(f"Unknown variable {name!r} for chart {self.chart.value}")

    def diff_p(self, k: int) -> "Series":
        terms = {}
        for (n, j, mu), c in self.terms.items():
            m = multiplicity(mu, k)
            if m:
                terms[(n, j, remove_part(mu, k))] = c * m
        return Series(self.chart, self.trunc, terms)

    def specialize_p(self, values: Mapping[int, Rational]) -> "Series":
        """Substitute numbers for the p_k listed in values."""
        terms: dict[Key, Fraction] = defaultdict(Fraction)
        for (n, k, mu), c in self.terms.items():
            kept = []
            for part in mu:
                if part in values:
                    c = c * values[part]
                else:
                    kept.append(part)
            if c:
                terms[(n, k, tuple(kept))] += c
        return Series.build(self.chart, self.trunc, terms)


# ----------------------------------------------------------------------
# Slice helpers (a slice is one fixed order of the expansion variable)
# ----------------------------------------------------------------------


def mul_slices(a: Slice, b: Slice) -> Slice:
    out: dict[tuple[int, Partition], Fraction] = defaultdict(Fraction)
    for (k1, m1), c1 in a.items():
        for (k2, m2), c2 in b.items():
            out[(k1 + k2, merge(m1, m2))] += c1 * c2
    return {key: c for key, c in out.items() if c}


def add_slice_into(acc: dict, s: Slice, scale: Rational = 1) -> None:
    for key, c in s.items():
        acc[key] = acc.get(key, 0) + c * scale


def _mul_terms(
    a: Mapping[Key, Fraction], b: Mapping[Key, Fraction], trunc: int
) -> dict[Key, Fraction]:
    b_by_n: dict[int, list] = defaultdict(list)
    for (n, k, mu), c in b.items():
        b_by_n[n].append((k, mu, c))
    b_orders = sorted(b_by_n)
    out: dict[Key, Fraction] = defaultdict(Fraction)
    for (n1, k1, m1), c1 in a.items():
        room = trunc - n1
        for n2 in b_orders:
            if n2 > room:
                break
            n = n1 + n2
            for k2, m2, c2 in b_by_n[n2]:
                out[(n, k1 + k2, merge(m1, m2))] += c1 * c2
    return {key: c for key, c in out.items() if c}


# ----------------------------------------------------------------------
# Public operations
# ----------------------------------------------------------------------


def ser_arith(
    a: Series,
    b: "Series | Rational",
    op: Literal["add", "sub", "mul", "scale"],
) -> Series:
    """Exact coefficient arithmetic; the result keeps the smaller truncation."""
    if op == "scale":
        c = _as_fraction(b)
        if not c:
            return Series.zero(a.chart, a.trunc)
        return Series(a.chart, a.trunc, {k: v * c for k, v in a.terms.items()}, a.graded)
    if not isinstance(b, Series):
        raise TypeError(f"ser_arith({op!r}) needs two series")
    a._check_chart(b)
    trunc = min(a.trunc, b.trunc)
    graded = a.graded and b.graded
    if op in ("add", "sub"):
        sign = 1 if op == "add" else -1
        terms = {k: v for k, v in a.terms.items() if k[0] <= trunc}
        for key, c in b.terms.items():
            if key[0] > trunc:
                continue
            value = terms.get(key, 0) + sign * c
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
        return Series(a.chart, trunc, terms, graded)
    if op == "mul":
        return Series(a.chart, trunc, _mul_terms(a.terms, b.terms, trunc), graded)
    raise ValueError(f"Unknown series operation {op!r}")


def ser_coeff(f: Series, key: tuple[int, int, Iterable[int]]) -> Fraction:
    n, k, mu = key
    if n > f.trunc:
        raise TruncationError(
            f"Coefficient at order {n} requested from a series truncated at {f.trunc}"
        )
    return f.terms.get((n, k, make_partition(mu)), Fraction(0))


def ser_compose(f: Series, subst: Mapping[str, Series]) -> Series:
    """Substitute series for the chart variables of f.

    Keys of subst are variable names of f's chart ("t", "x" or "z", "u").
    A variable left out is renamed to its counterpart in the target chart.
    All substituted series must share one chart, which becomes the result's.
    """
    first, second = f.chart.variables
    unknown = set(subst) - {first, second}
    if unknown:
        raise ValueError(f"Cannot substitute {sorted(unknown)} in a {f.chart.value} series")
    if not subst:
        return f
    charts = {s.chart for s in subst.values()}
    if len(charts) != 1:
        raise ChartMismatchError("Substituted series must share one chart")
    target = charts.pop()
    trunc = min([f.trunc] + [s.trunc for s in subst.values()])
    t_first, t_second = target.variables
    g = subst[first] if first in subst else Series.variable(target, trunc, t_first)
    h = subst[second] if second in subst else Series.variable(target, trunc, t_second)
    if any(n == 0 for n, _, _ in g.terms):
        raise DivergentSubstitutionError(
            f"Substitution for {first} has a term of {t_first}-order 0"
        )

    grouped: dict[int, dict[int, dict[Partition, Fraction]]] = defaultdict(
        lambda: defaultdict(dict)
    )
    for (n, k, mu), c in f.terms.items():
        grouped[n][k][mu] = c

    h_powers: dict[int, Series] = {0: Series.constant(target, trunc)}

    def h_power(k: int) -> Series:
        if k not in h_powers:
            h_powers[k] = h_power(k - 1) * h
        return h_powers[k]

    result: dict[Key, Fraction] = {}
    g_power = Series.constant(target, trunc)
    for n in range(0, max(grouped, default=-1) + 1):
        if n:
            g_power = g_power * g
        if n not in grouped:
            continue
        inner_trunc = trunc - n
        inner: dict[Key, Fraction] = defaultdict(Fraction)
        for k, coeffs in grouped[n].items():
            scalar = {(0, 0, mu): c for mu, c in coeffs.items()}
            for key, c in _mul_terms(h_power(k).terms, scalar, inner_trunc).items():
                inner[key] += c
        for key, c in _mul_terms(g_power.terms, inner, trunc).items():
            value = result.get(key, 0) + c
            if value:
                result[key] = value
            else:
                result.pop(key, None)
    out = Series(target, trunc, result)
    if f.graded and out.check_grading():
        out = out.with_grading(True)
    logger.debug(f"Composed {len(f)} terms into {len(out)} terms")
    return out
