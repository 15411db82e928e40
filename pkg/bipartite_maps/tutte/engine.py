"""
Order-by-order solution of the loop equation

    F_g = 1[g=0] + xt Omega F_g + xt Gamma F_{g-1} + xt sum_{g1+g2=g} F_{g1} F_{g2}

and the coefficientwise passage between rooted and unrooted series.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from bipartite_maps.errors import StructuralError
from bipartite_maps.series.partitions import (
    EMPTY,
    Partition,
    PartSupport,
    merge,
    multiplicity,
    remove_part,
)
from bipartite_maps.series.series import Chart, Series, Slice, add_slice_into, mul_slices
from bipartite_maps.tutte.operators import (
    apply_gamma,
    apply_pi,
    apply_xi,
    gamma_slice,
    omega_slice,
)

logger = logging.getLogger(__name__)


@dataclass
class GenusFamily:
    N: int
    F: list[Series] = field(default_factory=list)
    F2: list[Series] = field(default_factory=list)
    support: PartSupport | None = None

    @property
    def G(self) -> int:
        return len(self.F) - 1

    def rooted(self, g: int) -> Series:
        return self.F[g]


def _support_for(support: PartSupport | None, G: int, g: int) -> PartSupport | None:
    # F_g feeds Gamma for genus g+1, which lowers the allowance by one
    return support.widen(G - g) if support is not None else None


def compute_F(G: int, N: int, support: PartSupport | None = None) -> GenusFamily:
    """Rooted series F_0..F_G through t^N.

    With a support filter, F_g is kept on monomials with at most
    support.extra + (G - g) parts outside support.parts.
    """
    if G < 0 or N < 1:
        raise ValueError(f"compute_F needs G >= 0 and N >= 1, got G={G}, N={N}")
    keeps = [_support_for(support, G, g) for g in range(G + 1)]
    F: list[dict[int, Slice]] = [dict() for _ in range(G + 1)]
    F2: list[dict[int, Slice]] = [dict() for _ in range(G + 1)]
    F[0][0] = {(0, EMPTY): Fraction(1)}
    F2[0][0] = {}

    for n in range(1, N + 1):
        for g in range(G + 1):
            acc: dict = {}
            previous = F[g].get(n - 1)
            if previous:
                add_slice_into(acc, omega_slice(previous))
            if g >= 1:
                add_slice_into(acc, F2[g - 1].get(n - 1, {}))
            for g1 in range(g + 1):
                g2 = g - g1
                for n1 in range(n):
                    a = F[g1].get(n1)
                    b = F[g2].get(n - 1 - n1)
                    if a and b:
                        add_slice_into(acc, mul_slices(a, b))
            keep = keeps[g]
            new = {
                (k + 1, mu): c
                for (k, mu), c in acc.items()
                if c and (keep is None or keep(mu))
            }
            F[g][n] = new
            if g < G:
                gamma_keep = keeps[g + 1]
            else:
                gamma_keep = support.widen(-1) if support is not None else None
            F2[g][n] = {
                key: c
                for key, c in gamma_slice(new).items()
                if gamma_keep is None or gamma_keep(key[1])
            }
        logger.debug(f"Tutte order {n}: {[len(F[g][n]) for g in range(G + 1)]} terms")

    family = GenusFamily(N=N, support=support)
    for g in range(G + 1):
        family.F.append(_slices_to_series(F[g], N))
        family.F2.append(_slices_to_series(F2[g], N))
    logger.info(f"Solved loop equation through t^{N} for genus 0..{G}")
    return family


def _slices_to_series(slices: dict[int, Slice], N: int) -> Series:
    terms = {(n, k, mu): c for n, s in slices.items() for (k, mu), c in s.items()}
    return Series(Chart.TXP, N, terms, graded=True)


def unroot_series(F: Series) -> Series:
    """L with F = Gamma L, recovered coefficientwise and cross-checked.

    [p_nu t^n] L = [x^j p_{nu minus j} t^n] F / (j m_j(nu)) for every part j
    of nu; the largest part is used and all others must agree.
    """
    if not F.graded:
        raise StructuralError("unroot_series needs a map-graded rooted series")
    values: dict[tuple[int, Partition], Fraction] = {}
    for (n, k, mu), c in F.terms.items():
        if k == 0:
            continue
        nu = merge(mu, (k,))
        if nu[0] == k:
            values[(n, nu)] = c / (k * multiplicity(nu, k))
    for (n, k, mu), c in F.terms.items():
        if k == 0:
            continue
        nu = merge(mu, (k,))
        if (n, nu) not in values:
            raise StructuralError(
                f"F = Gamma L fails at t^{n} p_{nu}: part {k} is nonzero, largest part is zero"
            )
    for (n, nu), value in values.items():
        for j in set(nu):
            other = F.terms.get((n, j, remove_part(nu, j)), Fraction(0))
            if other != value * j * multiplicity(nu, j):
                raise StructuralError(
                    f"F = Gamma L fails at t^{n} p_{nu}: part {j} gives "
                    f"{other / (j * multiplicity(nu, j))}, largest part gives {value}"
                )
    terms = {(n, 0, nu): c for (n, nu), c in values.items()}
    constant = F.constant_term()
    if constant:
        terms[(0, 0, EMPTY)] = constant
    return Series(Chart.TXP, F.trunc, terms, graded=True)


def closed_f0_f02(N: int) -> tuple[Series, Series]:
    """Genus-0 closed forms in (z, u, p) through z^N.

    F_0 = (1+uz)(1 - sum_k p_k z^k sum_{l=1}^{k-1} C(2k-1, k+l) (uz)^l) and
    Gamma F_0 = (uz)^2 / (1-uz)^4.
    """
    inner: dict = {(0, 0, EMPTY): Fraction(1)}
    for k in range(2, N + 1):
        for ell in range(1, k):
            if k + ell > N:
                break
            inner[(k + ell, ell, (k,))] = Fraction(-comb(2 * k - 1, k + ell))
    inner_series = Series(Chart.ZUP, N, inner, graded=True)
    one_plus_w = Series.build(
        Chart.ZUP, N, {(0, 0, EMPTY): 1, (1, 1, EMPTY): 1}, graded=True
    )
    f0 = inner_series * one_plus_w
    f02 = Series.build(
        Chart.ZUP,
        N,
        {(j + 2, j + 2, EMPTY): comb(j + 3, 3) for j in range(max(N - 1, 0))},
        graded=True,
    )
    return f0, f02


def marked_series(F: Series) -> tuple[Series, Series]:
    """(face-marked, edge-marked) unrooted series: Xi F and Pi F."""
    return apply_xi(F), apply_pi(F)


def vertex_series(g: int, L: Series, F: Series) -> Series:
    """Vertex-marked series from the disymmetry identity."""
    face, edge = marked_series(F)
    L_no_constant = L.restrict(lambda mu: bool(mu))
    return L_no_constant.scale(2 - 2 * g) - face + edge


def rooting_defect(L: Series, F: Series) -> Series:
    """Gamma L - F with the constant term ignored; zero when F = Gamma L."""
    return apply_gamma(L) - (F - F.constant_term())


def census_coefficients(L: Series, n: int) -> dict[Partition, Fraction]:
    """n! [t^n p_mu] L for every mu."""
    scale = factorial(n)
    return {mu: c * scale for (m, _, mu), c in L.terms.items() if m == n}
