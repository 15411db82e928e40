"""
The change of variables (t, x) <-> (z, u).

    z = t (1 + gamma(z)),    u = x (1 + z u)^2

Both are solved in closed form by Lagrange inversion, then the inverse maps
t = z / (1 + gamma) and x = u / (1 + z u)^2 are expanded directly.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod

from bipartite_maps.coords.greek_series import catalan_weight, greek_series, parse_atom
from bipartite_maps.series.partitions import EMPTY, multiplicities, partitions_of
from bipartite_maps.series.series import Chart, Series, ser_compose
from bipartite_maps.series.univariate import UniSeries, binomial_series, uni_mul

logger = logging.getLogger(__name__)

DEFAULT_GREEK_INDEX = 4


@dataclass
class CoordData:
    N: int
    z_of_t: Series
    t_of_z: Series
    u_of_xz: Series
    u_of_tx: Series
    x_of_zu: Series
    greek: dict[str, Series] = field(default_factory=dict)

    def atom(self, name: str) -> Series:
        family, index = parse_atom(name)
        key = family if index == 0 else name
        if key not in self.greek:
            self.greek[key] = greek_series(key, self.N)
        return self.greek[key]

    def to_zu(self, f: Series) -> Series:
        """Push a (t, x, p) series to (z, u, p)."""
        return ser_compose(f, {"t": self.t_of_z, "x": self.x_of_zu})

    def to_tx(self, f: Series) -> Series:
        """Pull a (z, u, p) series back to (t, x, p)."""
        return ser_compose(f, {"z": self.z_of_t, "u": self.u_of_tx})


def z_of_t_series(N: int) -> Series:
    """[t^n p_mu] z for |mu| = n - 1, by Lagrange inversion of z = t phi(z)."""
    terms = {}
    for n in range(1, N + 1):
        for mu in partitions_of(n - 1):
            ell = len(mu)
            mult = prod(factorial(m) for m in multiplicities(mu).values())
            count = factorial(n) // (factorial(n - ell) * mult)
            weight = prod(catalan_weight(part) for part in mu)
            terms[(n, 0, mu)] = Fraction(count * weight, n)
    return Series(Chart.TXP, N, terms)


def u_coefficients(N: int) -> list[Fraction]:
    """c_n with u = sum_n c_n z^(n-1) x^n, n = 1..N+1."""
    return [Fraction(comb(2 * n, n - 1), n) for n in range(1, N + 2)]


def catalytic_series(coeffs: UniSeries, N: int, chart: Chart = Chart.ZUP) -> Series:
    """sum_j c_j (uz)^j as a p-free series."""
    terms = {(j, j, EMPTY): c for j, c in enumerate(coeffs[: N + 1]) if c}
    return Series(chart, N, terms, graded=True)


def solve_coords(N: int, index: int = DEFAULT_GREEK_INDEX) -> CoordData:
    if N < 1:
        raise ValueError(f"solve_coords needs N >= 1, got {N}")
    z_of_t = z_of_t_series(N)

    gamma = greek_series("gamma", N)
    t_of_z = (1 + gamma).inverse().shift(dn=1)

    u_terms = {(n - 1, n, EMPTY): c for n, c in enumerate(u_coefficients(N), start=1)}
    u_of_xz = Series(Chart.ZUP, N, u_terms)
    u_of_tx = ser_compose(u_of_xz, {"z": z_of_t})

    # x = u (1 + uz)^-2
    x_of_zu = catalytic_series(binomial_series(Fraction(-2), Fraction(1), N), N).shift(dk=1)

    coords = CoordData(N, z_of_t, t_of_z, u_of_xz, u_of_tx, x_of_zu)
    for name in ["gamma", "eta", "zeta"]:
        coords.atom(name)
    for i in range(1, index + 1):
        coords.atom(f"eta_{i}")
        coords.atom(f"zeta_{i}")
    logger.info(f"Solved change of variables through order {N}")
    return coords


def binomial_w_series(alpha: int, sign: int, N: int) -> Series:
    """(1 + sign uz)^alpha."""
    return catalytic_series(binomial_series(Fraction(alpha), Fraction(sign), N), N)


def s_power_series(m: int, N: int) -> Series:
    """s^m with s = (1 - uz)/(1 + uz)."""
    coeffs = uni_mul(
        binomial_series(Fraction(m), Fraction(-1), N),
        binomial_series(Fraction(-m), Fraction(1), N),
    )
    return catalytic_series(coeffs, N)
