"""
Taylor data of 2 F_0 + theta at the critical points u = 1/z and u = -1/z.

    2 F_0 + theta = sum_a G_a^+ (1 - uz)^a = sum_a G_a^- (1 + uz)^a

Every G_a^{+-} is a constant plus a linear combination of Greek variables.
It is computed twice: from the closed Laurent polynomial of Theta G_a in s,
and from the coefficient of each p_k z^k expanded directly, then solved
against the Greek variables. The two must agree.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, perm

from bipartite_maps.coords.greek_series import (
    CONSTANT,
    GreekCombo,
    atom_coefficient,
    atom_sort_key,
)
from bipartite_maps.coords.theta import laurent, theta_inverse
from bipartite_maps.errors import StructuralError
from bipartite_maps.series.linsolve import solve_exact
from bipartite_maps.series.univariate import (
    UniSeries,
    binomial_series,
    uni,
    uni_add,
    uni_mul,
    uni_pow,
    uni_scale,
    uni_sub,
)

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Closed route
# ----------------------------------------------------------------------


def _theta_of_taylor(sign: int, a: int):
    """Theta G_a^{+-} for a >= 2 as a Laurent polynomial in s."""
    scale = Fraction(1, 2**a)
    if sign > 0:
        # 2^-a s^-2 (1/s - s) sum_i C(a-1, 2i) s^-2i
        pairs: dict[int, Fraction] = {}
        for i in range((a - 1) // 2 + 1):
            c = scale * comb(a - 1, 2 * i)
            pairs[-3 - 2 * i] = pairs.get(-3 - 2 * i, 0) + c
            pairs[-1 - 2 * i] = pairs.get(-1 - 2 * i, 0) - c
    else:
        # 2^-a (s - 1/s) sum_i C(a-1, 2i) s^2i
        pairs = {}
        for i in range((a - 1) // 2 + 1):
            c = scale * comb(a - 1, 2 * i)
            pairs[1 + 2 * i] = pairs.get(1 + 2 * i, 0) + c
            pairs[-1 + 2 * i] = pairs.get(-1 + 2 * i, 0) - c
    return laurent(*pairs.items())


@lru_cache(maxsize=None)
def _taylor_closed(sign: int, a: int) -> tuple[tuple[str, Fraction], ...]:
    if a == 0:
        combo = {CONSTANT: 4, "gamma": 4} if sign > 0 else {}
    elif a == 1:
        combo = {CONSTANT: -2, "eta": 2} if sign > 0 else {CONSTANT: 2, "zeta": 2}
    else:
        combo = theta_inverse(_theta_of_taylor(sign, a))
    return tuple(sorted(((k, Fraction(v)) for k, v in combo.items() if v), key=lambda kv: atom_sort_key(kv[0])))


def taylor_closed(sign: int, a: int) -> GreekCombo:
    return dict(_taylor_closed(sign, a))


# ----------------------------------------------------------------------
# Direct route
# ----------------------------------------------------------------------


def _phi_expansion(k: int, sign: int, order: int) -> UniSeries:
    """[p_k z^k](2 F_0 + theta) in the local variable 1 -+ uz."""
    half = Fraction(1, 2)
    if sign > 0:
        # w = 1 - e: (2 - e)^2k (1 - e)^-k
        main = uni_scale(
            uni_mul(binomial_series(2 * k, -half, order), binomial_series(-k, -1, order)), 4**k
        )
        w = uni([1, -1], order)
        one_plus_w = uni([2, -1], order)
    else:
        # w = e - 1: e^2k (e - 1)^-k
        tail = uni_scale(binomial_series(-k, -1, order), (-1) ** k)
        main = uni([0] * (2 * k) + tail, order)
        w = uni([-1, 1], order)
        one_plus_w = uni([0, 1], order)
    poly = uni([], order)
    for ell in range(1, k):
        poly = uni_add(poly, uni_scale(uni_pow(w, ell), comb(2 * k - 1, k + ell)))
    return uni_sub(main, uni_scale(uni_mul(one_plus_w, poly), 2))


def taylor_direct(sign: int, a: int, K: int) -> tuple[Fraction, list[Fraction]]:
    """(constant, [c_1..c_K]) with G_a = constant + sum_k c_k p_k z^k."""
    constant = uni([4, -2] if sign > 0 else [0, 2], a)[a]
    coeffs = [_phi_expansion(k, sign, a)[a] for k in range(1, K + 1)]
    return constant, coeffs


def solve_taylor_direct(sign: int, a: int) -> GreekCombo:
    """Solve the direct coefficients against the Greek variables."""
    m = max(1, a // 2 + 1)
    unknowns = ["gamma", "eta", "zeta"] + [f"eta_{i}" for i in range(1, m + 1)]
    unknowns += [f"zeta_{i}" for i in range(1, m + 1)]
    K = len(unknowns) + 4
    constant, coeffs = taylor_direct(sign, a, K)
    rows = [
        {col: atom_coefficient(name, k) for col, name in enumerate(unknowns)}
        for k in range(1, K + 1)
    ]
    solution = solve_exact(rows, coeffs, len(unknowns))
    combo = {name: v for name, v in zip(unknowns, solution) if v}
    if constant:
        combo[CONSTANT] = constant
    return combo


def taylor_kernel(sign: int, a: int, check: bool = True) -> GreekCombo:
    """G_a^{+-}: the coefficient of (1 -+ uz)^a in 2 F_0 + theta.

    The derivative d^a/du^a (2 F_0 + theta) at u = +-1/z equals
    a! (-+z)^a G_a^{+-}.
    """
    if sign not in (1, -1) or a < 0:
        raise ValueError(f"taylor_kernel needs sign = +-1 and a >= 0, got {sign}, {a}")
    combo = taylor_closed(sign, a)
    if check:
        direct = solve_taylor_direct(sign, a)
        if {k: Fraction(v) for k, v in direct.items()} != combo:
            raise StructuralError(
                f"Taylor coefficient G_{a}^{'+' if sign > 0 else '-'}: closed form {combo} "
                f"disagrees with direct expansion {direct}"
            )
    return combo


# ----------------------------------------------------------------------
# Lattice-path series
# ----------------------------------------------------------------------


@dataclass
class LatticeSeries:
    a: int
    order: int
    closed: dict[str, UniSeries] = field(default_factory=dict)
    direct: dict[str, UniSeries] = field(default_factory=dict)


def _rising(ell: int, a: int) -> int:
    return perm(ell + a - 1, a)


def lattice_oracles(a: int, order: int) -> LatticeSeries:
    """D_a, T_a and their signed versions, closed form against double sums."""
    if a < 2:
        raise ValueError(f"lattice_oracles needs a >= 2, got {a}")
    r = binomial_series(Fraction(-1, 2), Fraction(-4), order)
    r_inv = binomial_series(Fraction(1, 2), Fraction(-4), order)
    one = uni([1], order)
    minus_4y = uni([0, -4], order)
    scale = Fraction(factorial(a), 2 ** (a + 1))
    r_sq_minus_1 = uni_sub(uni_mul(r, r), one)

    result = LatticeSeries(a, order)
    result.closed["D"] = uni_scale(
        uni_mul(uni_mul(r, r_sq_minus_1), uni_pow(uni_sub(r, one), a - 1)), scale
    )
    result.closed["T"] = uni_scale(
        uni_mul(uni_mul(r, r_sq_minus_1), uni_pow(uni_add(r, one), a - 1)), scale
    )
    result.closed["D~"] = uni_scale(
        uni_mul(uni_mul(minus_4y, r), uni_pow(uni_sub(r_inv, one), a - 1)), scale
    )
    result.closed["T~"] = uni_scale(
        uni_mul(uni_mul(minus_4y, r), uni_pow(uni_add(r_inv, one), a - 1)), scale
    )

    def direct(weight, signed: bool) -> UniSeries:
        return [
            Fraction(
                sum(
                    (-1) ** (ell if signed else 0) * weight(ell) * comb(2 * k, k + ell)
                    for ell in range(1, k + 1)
                )
            )
            for k in range(order + 1)
        ]

    result.direct["D"] = direct(lambda ell: perm(ell, a), False)
    result.direct["T"] = direct(lambda ell: _rising(ell, a), False)
    result.direct["D~"] = direct(lambda ell: perm(ell, a), True)
    result.direct["T~"] = direct(lambda ell: _rising(ell, a), True)

    for name in result.closed:
        if result.closed[name] != result.direct[name]:
            raise StructuralError(
                f"Lattice series {name}_{a}: closed form and double sum differ through y^{order}"
            )
    logger.debug(f"Lattice series for a = {a} agree through y^{order}")
    return result
