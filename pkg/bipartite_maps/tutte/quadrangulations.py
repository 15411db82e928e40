"""
General maps through bipartite quadrangulations.

Rooted maps of genus g with n edges are in bijection with rooted bipartite
quadrangulations of genus g with n faces, i.e. [t^{2n} x^2 p_2^{n-1}] F_g.
"""

import logging
from fractions import Fraction

from bipartite_maps.series.partitions import PartSupport
from bipartite_maps.series.univariate import (
    UniSeries,
    fixed_point,
    uni,
    uni_add,
    uni_inv,
    uni_mul,
    uni_scale,
    uni_sub,
)
from bipartite_maps.tutte.engine import compute_F

logger = logging.getLogger(__name__)

QUADRANGLES = PartSupport(frozenset({2}), 0)


def quadrangulation_series(g: int, order: int) -> UniSeries:
    """Rooted general maps of genus g counted by edges, through t^order."""
    family = compute_F(g, 2 * order, support=QUADRANGLES)
    F = family.F[g]
    out = uni([], order)
    if g == 0:
        out[0] = Fraction(1)
    for n in range(1, order + 1):
        out[n] = F.terms.get((2 * n, 2, (2,) * (n - 1)), Fraction(0))
    return out


def tutte_sigma_series(order: int) -> UniSeries:
    """sigma = 1 + 3 t sigma^2."""

    def rhs(sigma: UniSeries) -> UniSeries:
        shifted = [Fraction(0)] + uni_scale(uni_mul(sigma, sigma), 3)[:order]
        return uni_add(uni([1], order), shifted)

    return fixed_point(rhs, order)


def planar_quadrangulation_oracle(order: int) -> UniSeries:
    """sigma (4 - sigma) / 3."""
    sigma = tutte_sigma_series(order)
    four = uni([4], order)
    return uni_scale(uni_mul(sigma, uni_sub(four, sigma)), Fraction(1, 3))


def torus_quadrangulation_oracle(order: int) -> UniSeries:
    """sigma (sigma - 1)^2 / (3 (sigma + 2) (sigma - 2)^2)."""
    sigma = tutte_sigma_series(order)
    one, two = uni([1], order), uni([2], order)
    s_minus_1 = uni_sub(sigma, one)
    s_minus_2 = uni_sub(sigma, two)
    numerator = uni_mul(sigma, uni_mul(s_minus_1, s_minus_1))
    denominator = uni_mul(uni_add(sigma, two), uni_mul(s_minus_2, s_minus_2))
    return uni_scale(uni_mul(numerator, uni_inv(denominator)), Fraction(1, 3))
