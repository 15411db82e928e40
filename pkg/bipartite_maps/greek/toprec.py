"""
Topological recursion for the rooted series F_g in the Greek field.

    F_g(u0) = sum over u = +-1/z of Res P(u)/(P(u0)(u0 - u)) * xt/Y * H_g(u) du

with H_1 = Gamma F_0 = (uz)^2/(1 - uz)^4 and, for g >= 2,
H_g = Gamma F_{g-1} + sum_{g1 + g2 = g, g1, g2 >= 1} F_{g1} F_{g2}.

The residues are taken in the s coordinate, where

    du = -2 ds / (z (1 + s)^2),    u0 - u = 2 (s - s0) / (z (1 + s0) (1 + s)),

so the explicit powers of z cancel and the result is a Laurent polynomial in s0.
"""

import logging
from fractions import Fraction
from typing import Mapping

from bipartite_maps.errors import StructuralError
from bipartite_maps.greek.field import (
    ONE_MINUS_ETA,
    ONE_PLUS_ZETA,
    ZERO,
    GreekElem,
    closed_form_terms,
    one_minus_w_inverse,
    one_plus_w_inverse,
)
from bipartite_maps.greek.gamma import gamma_calc
from bipartite_maps.greek.local import LocalExp, expand_xtPY, geometric, local_expand
from bipartite_maps.models import BasisTerm, ClosedFormF, ClosedFormTerm

logger = logging.getLogger(__name__)


def residue_sum(plus: LocalExp, minus: LocalExp) -> GreekElem:
    """Sum of the residues at u = 1/z and u = -1/z, as a function of s0.

    plus and minus are the integrands P(u) xt/Y H(u) expanded at each pole.
    The kernel (1 + s0) / (s0 (1 + s) (s0 - s)) ds is applied here.
    """
    # at s = 0: Res A(s)/(s0 - s) ds is the principal part of A at s0
    a_plus = plus * geometric("+", max(0, -1 - plus.min_exp))
    principal = ZERO
    for j in range(plus.min_exp, 0):
        c = a_plus.coefficient(j)
        if c:
            principal = principal + c * GreekElem.s(j)
    # at s = infinity, in t = 1/s: the part with t^j, j <= 0
    a_minus = minus * geometric("-", max(0, -minus.min_exp))
    polynomial = ZERO
    for j in range(min(a_minus.min_exp, 0), 1):
        c = a_minus.coefficient(j)
        if c:
            polynomial = polynomial + c * GreekElem.s(-j)
    return (principal + polynomial) * (GreekElem.s(-1) + 1)


def h_one() -> GreekElem:
    """Gamma F_0 = (uz)^2/(1 - uz)^4 = (1 - s^2)^2 / (16 s^4)."""
    s2 = GreekElem.s(2)
    return (1 - s2) ** 2 * GreekElem.s(-4) * Fraction(1, 16)


def h_term(g: int, family: Mapping[int, GreekElem]) -> GreekElem:
    if g == 1:
        return h_one()
    out = gamma_calc(family[g - 1])
    for g1 in range(1, g):
        out = out + family[g1] * family[g - g1]
    return out


def toprec_F(g: int, family: Mapping[int, GreekElem] | None = None) -> GreekElem:
    """F_g from F_1..F_{g-1}; the result is odd in s0 with poles only at 0 and infinity."""
    if g < 1:
        raise ValueError(f"toprec_F needs g >= 1, got {g}")
    family = dict(family or {})
    missing = [h for h in range(1, g) if h not in family]
    if missing:
        raise ValueError(f"toprec_F({g}) needs F_{missing[0]}")
    H = h_term(g, family)
    exps = H.s_laurent()
    plus_order = max(0, -min(exps) - 1)
    minus_order = max(-2, max(exps) - 1)
    h_plus = local_expand(H, "+", bound=6 * g - 2)
    h_minus = local_expand(H, "-", bound=2 * g + 2)
    plus = expand_xtPY("+", plus_order) * h_plus
    minus = expand_xtPY("-", minus_order) * h_minus
    F = residue_sum(plus, minus)
    if not F.is_odd_in_s():
        raise StructuralError(f"F_{g} is not odd under s -> -s")
    logger.info(f"Topological recursion: F_{g} has {len(F.num.terms())} numerator terms")
    return F


def check_pole_bounds(g: int, F: GreekElem) -> bool:
    """Pole orders at most 6g - 1 at u = 1/z and 2g - 1 at u = -1/z."""
    exps = F.s_laurent()
    return -min(exps) <= 6 * g - 1 and max(exps) <= 2 * g - 1


def closed_form_f(g: int, F: GreekElem) -> ClosedFormF:
    return ClosedFormF(g, closed_form_terms(F))


# ----------------------------------------------------------------------
# The printed genus-one display
# ----------------------------------------------------------------------


def reference_f1() -> GreekElem:
    """The genus-one rooted series exactly as displayed in the literature."""
    eta, eta_1 = GreekElem.atom("eta"), GreekElem.atom("eta_1")
    zeta = GreekElem.atom("zeta")
    E, Z = GreekElem.make(ONE_MINUS_ETA), GreekElem.make(ONE_PLUS_ZETA)
    q, r = one_minus_w_inverse(), one_plus_w_inverse()
    return (
        q**2 * (eta - eta_1 * 2 - 1) / (E**2 * 16)
        + q * (Z * eta_1 * 4 + eta**2 * 3 - zeta * E * 6 + 3) / (Z * E**2 * 96)
        - q**5 / (E * 2)
        - q**4 * Fraction(5, 4) / E
        - r / (Z * 32)
        - q**3 * (eta * 21 - eta_1 * 2 - 21) / (E**2 * 24)
    )


def compare_closed_forms(
    computed: list[ClosedFormTerm], reference: list[ClosedFormTerm]
) -> list[tuple[BasisTerm, Fraction, Fraction]]:
    """(term, computed, reference) for every basis term where the two differ."""
    ours = {t.term: t.coeff for t in computed}
    theirs = {t.term: t.coeff for t in reference}
    diffs = []
    for term in sorted(set(ours) | set(theirs), key=lambda t: (t.sign, -t.c, t.alpha, t.beta, t.a, t.b)):
        a, b = ours.get(term, Fraction(0)), theirs.get(term, Fraction(0))
        if a != b:
            diffs.append((term, a, b))
    return diffs
