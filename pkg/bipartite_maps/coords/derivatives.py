"""
Series-level derivatives in the (z, u, p) chart.

The rooting operator Gamma = sum_k k x^k d/dp_k is taken at fixed (t, x), so
on a (z, u, p) series it picks up the chain rule through z(t, p) and
u(t, x, p):

    Gamma f = sum_k k x^k (f_{p_k} + f_z dz/dp_k + f_u du/dp_k)
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from bipartite_maps.coords.change_of_variables import CoordData, binomial_w_series
from bipartite_maps.coords.greek_series import catalan_weight
from bipartite_maps.coords.theta import d_series, theta_series
from bipartite_maps.series.partitions import multiplicities, remove_part
from bipartite_maps.series.series import Chart, Series
from bipartite_maps.series.univariate import binomial_series

logger = logging.getLogger(__name__)


def _one_minus_eta_inverse(coords: CoordData) -> Series:
    return (1 - coords.atom("eta")).inverse()


def _explicit_part(f: Series) -> Series:
    """sum_k k x^k d f / d p_k at fixed z and u."""
    N = f.trunc
    out: dict = defaultdict(Fraction)
    for (m, j, mu), c in f.terms.items():
        for part, mult in multiplicities(mu).items():
            rest = remove_part(mu, part)
            weight = c * part * mult
            for i, b in enumerate(binomial_series(Fraction(-2 * part), Fraction(1), N - m)):
                out[(m + i, j + part + i, rest)] += weight * b
    return Series.build(Chart.ZUP, N, out, graded=f.graded)


def gamma_series_zup(f: Series, coords: CoordData) -> Series:
    """Gamma of a (z, u, p) series, through order trunc - 1."""
    if f.chart is not Chart.ZUP:
        raise ValueError("gamma_series_zup acts on (z, u, p) series")
    N = min(f.trunc, coords.N)
    f = f.truncate(N)
    one_minus_eta_inv = _one_minus_eta_inverse(coords).truncate(N)
    u_squared = Series.monomial(Chart.ZUP, N, k=2)
    chain = f.diff("z") + (u_squared * f.diff("u") * binomial_w_series(-1, -1, N)).scale(2)
    marks = theta_series(d_series(coords.atom("gamma").truncate(N)))
    implicit = (chain * one_minus_eta_inv * marks).shift(dn=1)
    return (_explicit_part(f) + implicit).truncate(N - 1)


# ----------------------------------------------------------------------
# Partial derivatives of the variables
# ----------------------------------------------------------------------


@dataclass
class DerivativeCheck:
    name: str
    lhs: Series
    rhs: Series

    @property
    def holds(self) -> bool:
        trunc = min(self.lhs.trunc, self.rhs.trunc)
        return self.lhs.truncate(trunc) == self.rhs.truncate(trunc)


def diff_table(coords: CoordData, max_part: int = 3) -> list[DerivativeCheck]:
    """Both sides of the implicit-differentiation identities, in (t, x, p)."""
    N = coords.N
    gamma = coords.atom("gamma")
    A = _one_minus_eta_inverse(coords)
    u = Series.monomial(Chart.ZUP, N, k=1)
    z = Series.monomial(Chart.ZUP, N, n=1)
    one_minus_w_inv = binomial_w_series(-1, -1, N)
    one_plus_gamma_sq = (1 + gamma) ** 2

    checks = [
        DerivativeCheck(
            "du/dx",
            coords.u_of_tx.diff("x"),
            coords.to_tx(binomial_w_series(3, 1, N) * one_minus_w_inv),
        ),
        DerivativeCheck("dz/dt", coords.z_of_t.diff("t"), coords.to_tx(one_plus_gamma_sq * A)),
        DerivativeCheck(
            "du/dt",
            coords.u_of_tx.diff("t"),
            coords.to_tx((one_plus_gamma_sq * u * u * A * one_minus_w_inv).scale(2)),
        ),
        DerivativeCheck(
            "dz/dx", coords.z_of_t.diff("x"), Series.zero(Chart.TXP, N)
        ),
    ]
    for k in range(1, max_part + 1):
        z_power = (z ** (k + 1)).scale(catalan_weight(k))
        checks.append(
            DerivativeCheck(f"dz/dp{k}", coords.z_of_t.diff_p(k), coords.to_tx(z_power * A))
        )
        checks.append(
            DerivativeCheck(
                f"du/dp{k}",
                coords.u_of_tx.diff_p(k),
                coords.to_tx((u * u * z_power * A * one_minus_w_inv).scale(2)),
            )
        )
    for check in checks:
        logger.debug(f"{check.name}: {'ok' if check.holds else 'FAILED'}")
    return checks
