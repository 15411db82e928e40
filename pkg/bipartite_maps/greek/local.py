"""
Local expansions at the two critical points u = 1/z and u = -1/z.

At u = 1/z the local variable is s itself; at u = -1/z it is t = 1/s.
Coefficients are s-free Greek field elements.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Literal, Mapping

from bipartite_maps.coords.greek_series import CONSTANT, atom_coefficient
from bipartite_maps.coords.taylor import taylor_direct, taylor_kernel
from bipartite_maps.errors import StructuralError, TruncationError
from bipartite_maps.greek.field import ONE, ZERO, GreekElem, combo_to_elem

logger = logging.getLogger(__name__)

Pole = Literal["+", "-"]


@dataclass(frozen=True)
class LocalExp:
    """sum_j coeffs[j] * local^j, known exactly through exponent trunc (None: exact)."""

    pole: Pole
    coeffs: Mapping[int, GreekElem] = field(default_factory=dict)
    trunc: int | None = None

    @property
    def min_exp(self) -> int:
        return min((j for j, c in self.coeffs.items() if c), default=0)

    def coefficient(self, j: int) -> GreekElem:
        if self.trunc is not None and j > self.trunc:
            raise TruncationError(
                f"Local coefficient {j} requested from an expansion known through {self.trunc}"
            )
        return self.coeffs.get(j, ZERO)

    def truncate(self, trunc: int) -> "LocalExp":
        if self.trunc is not None:
            trunc = min(trunc, self.trunc)
        return LocalExp(self.pole, {j: c for j, c in self.coeffs.items() if j <= trunc}, trunc)

    def _check_pole(self, other: "LocalExp") -> None:
        if self.pole != other.pole:
            raise ValueError("Cannot combine expansions at different poles")

    def __add__(self, other: "LocalExp") -> "LocalExp":
        self._check_pole(other)
        truncs = [t for t in (self.trunc, other.trunc) if t is not None]
        trunc = min(truncs) if truncs else None
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out[j] + c if j in out else c
        return LocalExp(self.pole, _clean(out, trunc), trunc)

    def __mul__(self, other: "LocalExp") -> "LocalExp":
        self._check_pole(other)
        if not self.coeffs or not other.coeffs:
            return LocalExp(self.pole, {}, None)
        bounds = []
        if self.trunc is not None:
            bounds.append(self.trunc + other.min_exp)
        if other.trunc is not None:
            bounds.append(other.trunc + self.min_exp)
        trunc = min(bounds) if bounds else None
        out: dict[int, GreekElem] = {}
        for j1, c1 in self.coeffs.items():
            for j2, c2 in other.coeffs.items():
                j = j1 + j2
                if trunc is not None and j > trunc:
                    continue
                out[j] = out[j] + c1 * c2 if j in out else c1 * c2
        return LocalExp(self.pole, _clean(out, trunc), trunc)

    def scale(self, c) -> "LocalExp":
        return LocalExp(
            self.pole, _clean({j: v * c for j, v in self.coeffs.items()}, self.trunc), self.trunc
        )

    def inverse(self, upto: int | None = None) -> "LocalExp":
        """Multiplicative inverse; the lowest coefficient must be a unit."""
        v = self.min_exp
        if self.trunc is None and upto is None:
            raise ValueError("Inverting an exact expansion needs an explicit order")
        trunc = self.trunc - 2 * v if self.trunc is not None else upto
        if upto is not None:
            trunc = min(trunc, upto)
        lead_inv = self.coeffs[v].invert()
        d: list[GreekElem] = [lead_inv]
        for n in range(1, trunc + v + 1):
            acc = ZERO
            for i in range(1, n + 1):
                c = self.coeffs.get(v + i)
                if c:
                    acc = acc + c * d[n - i]
            d.append(-(acc * lead_inv))
        return LocalExp(self.pole, _clean({n - v: c for n, c in enumerate(d)}, trunc), trunc)


def _clean(coeffs: Mapping[int, GreekElem], trunc: int | None) -> dict[int, GreekElem]:
    return {
        j: c for j, c in sorted(coeffs.items()) if c and (trunc is None or j <= trunc)
    }


def local_expand(
    e: GreekElem, pole: Pole, order: int | None = None, bound: int | None = None
) -> LocalExp:
    """Expansion of e in the local variable at the pole.

    A Greek field element is a Laurent polynomial in s, so the expansion is
    exact; order only truncates it. bound caps the admissible pole order.
    """
    sign = 1 if pole == "+" else -1
    coeffs = {sign * j: c for j, c in e.s_laurent().items()}
    out = LocalExp(pole, _clean(coeffs, None), None)
    if bound is not None and out.coeffs and out.min_exp < -bound:
        raise StructuralError(
            f"Pole of order {-out.min_exp} at {pole}1/z exceeds the bound {bound}"
        )
    return out.truncate(order) if order is not None else out


def geometric(pole: Pole, order: int) -> LocalExp:
    """1/(1 + s): 1 - s + s^2 - ... at u = 1/z, t - t^2 + ... with t = 1/s at u = -1/z."""
    if pole == "+":
        coeffs = {j: GreekElem.const((-1) ** j) for j in range(order + 1)}
    else:
        coeffs = {j: GreekElem.const((-1) ** (j - 1)) for j in range(1, order + 1)}
    return LocalExp(pole, coeffs, order)


# ----------------------------------------------------------------------
# xt P / Y
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def taylor_elem(sign: int, a: int) -> GreekElem:
    return combo_to_elem(taylor_kernel(sign, a))


def _check_taylor_against_direct(sign: int, a: int, K: int) -> None:
    combo = taylor_kernel(sign, a, check=False)
    constant, direct = taylor_direct(sign, a, K)
    if Fraction(combo.get(CONSTANT, 0)) != constant:
        raise StructuralError(f"Constant part of G_{a} disagrees at K = {K}")
    for k, value in enumerate(direct, start=1):
        predicted = sum(
            (Fraction(c) * atom_coefficient(name, k) for name, c in combo.items() if name != CONSTANT),
            Fraction(0),
        )
        if predicted != value:
            raise StructuralError(
                f"Taylor coefficient G_{a} disagrees with the K = {K} kernel at p_{k}"
            )


def _eps_power_coeff(n: int, m: int) -> int:
    """[local^m] of eps^n with eps = 2 local / (1 + local)."""
    if n == 0:
        return 1 if m == 0 else 0
    if m < n:
        return 0
    return 2**n * (-1) ** (m - n) * comb(m - 1, m - n)


def _in_local(eps_coeffs: list[GreekElem], pole: Pole, order: int) -> LocalExp:
    """sum_n eps_coeffs[n] eps^n as an expansion in the local variable."""
    out: dict[int, GreekElem] = {}
    for m in range(order + 1):
        acc = ZERO
        for n, c in enumerate(eps_coeffs[: m + 1]):
            w = _eps_power_coeff(n, m)
            if w and c:
                acc = acc + c * w
        out[m] = acc
    return LocalExp(pole, _clean(out, order), order)


def expand_xtPY(sign: Pole, order: int, K: int | None = None) -> LocalExp:
    """xt P/Y at u = 1/z (sign "+") or u = -1/z (sign "-"), with P = s.

    With eps = 1 -+ uz and the Taylor data G_a of 2 F_0 + theta:

        + : 1 / ((2 - eps) (2 (1 - eta) + sum_{a>=2} (1 + gamma - G_a^+) eps^(a-1)))
        - : -(2 - eps) / (eps^2 (2 (1 + zeta) + sum_{a>=2} (G_a^- + 1 + gamma) eps^(a-1)))

    in the local variable s (resp. 1/s), where eps = 2 local / (1 + local).
    When K is given, every Taylor coefficient used is also checked against
    the explicit kernel with p_i = 0 for i > K.
    """
    if order < (0 if sign == "+" else -2):
        raise ValueError(f"expand_xtPY order {order} is below the leading exponent at {sign}1/z")
    s = 1 if sign == "+" else -1
    one_plus_gamma = GreekElem.atom("gamma") + 1
    # the bracket is needed through eps^depth
    depth = order if sign == "+" else order + 2
    bracket = [taylor_elem(s, 1) * (-s)]
    for a in range(2, depth + 2):
        if K is not None:
            _check_taylor_against_direct(s, a, K)
        g = taylor_elem(s, a)
        bracket.append(one_plus_gamma - g if sign == "+" else g + one_plus_gamma)
    if K is not None:
        _check_taylor_against_direct(s, 1, K)
    local_bracket = _in_local(bracket, sign, depth)
    two_minus_eps = _in_local([GreekElem.const(2), -ONE], sign, depth)
    if sign == "+":
        phi = (two_minus_eps * local_bracket).inverse(upto=order)
    else:
        # eps^-2 = (1 + t)^2 / (4 t^2)
        eps_inv_sq = LocalExp(
            sign, {-2: GreekElem.const(Fraction(1, 4)), -1: GreekElem.const(Fraction(1, 2)),
                   0: GreekElem.const(Fraction(1, 4))}, None,
        )
        phi = (local_bracket.inverse(upto=depth) * two_minus_eps * eps_inv_sq).scale(-1)
        phi = phi.truncate(order)
    logger.debug(f"Expanded xtP/Y at {sign}1/z through order {order}")
    return LocalExp(sign, dict(phi.coeffs), order)
