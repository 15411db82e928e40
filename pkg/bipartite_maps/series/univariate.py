"""
Truncated power series in a single variable, as lists of Fractions.

Used by the closed-form oracles (lattice-path series, Tutte's quadrangulation
series) where the multivariate machinery would be overkill.
"""

from fractions import Fraction
from typing import Sequence

from bipartite_maps.errors import NonUnitError

UniSeries = list[Fraction]


def uni(coeffs: Sequence, order: int) -> UniSeries:
    out = [Fraction(c) for c in coeffs[: order + 1]]
    return out + [Fraction(0)] * (order + 1 - len(out))


def uni_add(a: UniSeries, b: UniSeries) -> UniSeries:
    return [x + y for x, y in zip(a, b)]


def uni_sub(a: UniSeries, b: UniSeries) -> UniSeries:
    return [x - y for x, y in zip(a, b)]


def uni_scale(a: UniSeries, c) -> UniSeries:
    return [x * c for x in a]


def uni_mul(a: UniSeries, b: UniSeries) -> UniSeries:
    order = min(len(a), len(b)) - 1
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if not x:
            continue
        for j in range(order + 1 - i):
            out[i + j] += x * b[j]
    return out


def uni_inv(a: UniSeries) -> UniSeries:
    if not a[0]:
        raise NonUnitError("power series with zero constant term is not invertible")
    order = len(a) - 1
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / a[0]
    for n in range(1, order + 1):
        out[n] = -sum(a[i] * out[n - i] for i in range(1, n + 1)) * out[0]
    return out


def uni_pow(a: UniSeries, e: int) -> UniSeries:
    if e < 0:
        return uni_pow(uni_inv(a), -e)
    out = uni([1], len(a) - 1)
    for _ in range(e):
        out = uni_mul(out, a)
    return out


def binomial_series(alpha: Fraction, c: Fraction, order: int) -> UniSeries:
    """(1 + c y)^alpha."""
    out = [Fraction(1)]
    coeff = Fraction(1)
    for n in range(1, order + 1):
        coeff = coeff * (alpha - n + 1) / n
        out.append(coeff * c**n)
    return out


def fixed_point(rhs, order: int) -> UniSeries:
    """Solve f = rhs(f) by iteration, gaining one order per round."""
    f = uni([], order)
    for _ in range(order + 1):
        f = rhs(f)
    return f
