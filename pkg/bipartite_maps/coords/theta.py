"""
The operators Theta and D on Greek variables.

Theta sends p_k z^k to (xz)^k and D sends p_k z^k to k p_k z^k. On Greek
variables both have closed forms: Theta lands in Laurent polynomials in
s = (1 - uz)/(1 + uz), D stays inside the span of the Greek variables.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from bipartite_maps.coords.change_of_variables import s_power_series
from bipartite_maps.coords.greek_series import (
    CONSTANT,
    GreekCombo,
    atom_name,
    combo_add,
    parse_atom,
)
from bipartite_maps.errors import StructuralError
from bipartite_maps.series.partitions import EMPTY
from bipartite_maps.series.series import Chart, Series
from bipartite_maps.series.univariate import binomial_series


@dataclass(frozen=True)
class LaurentS:
    """Finite Laurent polynomial in s; coefficients are Fractions or Greek elements."""

    coeffs: Mapping[int, object] = field(default_factory=dict)

    @classmethod
    def build(cls, coeffs: Mapping[int, object]) -> "LaurentS":
        return cls({m: c for m, c in coeffs.items() if c})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentS):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(not (self.coeffs.get(m, 0) - other.coeffs.get(m, 0)) for m in keys)

    __hash__ = None

    def __add__(self, other: "LaurentS") -> "LaurentS":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out[m] + c if m in out else c
        return LaurentS.build(out)

    def __neg__(self) -> "LaurentS":
        return self.scale(-1)

    def __sub__(self, other: "LaurentS") -> "LaurentS":
        return self + (-other)

    def __mul__(self, other: "LaurentS") -> "LaurentS":
        out: dict[int, object] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = m1 + m2
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return LaurentS.build(out)

    def scale(self, c) -> "LaurentS":
        return LaurentS.build({m: v * c for m, v in self.coeffs.items()})

    def shift(self, d: int) -> "LaurentS":
        return LaurentS({m + d: c for m, c in self.coeffs.items()})

    def is_odd(self) -> bool:
        return all(m % 2 for m in self.coeffs)

    def euler(self) -> "LaurentS":
        """(s - 1/s) d/ds."""
        out: dict[int, object] = defaultdict(Fraction)
        for m, c in self.coeffs.items():
            out[m] += c * m
            out[m - 2] -= c * m
        return LaurentS.build(out)

    def to_series(self, N: int) -> Series:
        """Expand in (z, u) with s = (1 - uz)/(1 + uz)."""
        out = Series.zero(Chart.ZUP, N)
        for m, c in self.coeffs.items():
            out = out + s_power_series(m, N).scale(c)
        return out


def laurent(*pairs: tuple[int, object]) -> LaurentS:
    return LaurentS.build(dict(pairs))


S_MINUS_INVERSE = laurent((1, 1), (-1, -1))


# ----------------------------------------------------------------------
# Theta
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def theta_closed(name: str) -> LaurentS:
    """Theta of a Greek variable, or of "eta+gamma" / "zeta-gamma"."""
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    if name == "eta+gamma":
        return laurent((-3, quarter), (-1, -quarter))
    if name == "zeta-gamma":
        return laurent((1, quarter), (-1, -quarter))
    family, i = parse_atom(name)
    if family == "gamma":
        return laurent((-1, half), (0, -half))
    if family == "eta":
        base = laurent((-3, quarter), (-1, -3 * quarter), (0, half))
        for _ in range(i):
            base = base.euler().scale(half)
        return base
    if i == 0:
        return laurent((1, quarter), (-1, quarter), (0, -half))
    out = S_MINUS_INVERSE.scale(half)
    s2_minus_1 = laurent((2, 1), (0, -1))
    for _ in range(i):
        out = out * s2_minus_1
    return out


def theta_of_combo(combo: GreekCombo) -> LaurentS:
    out = LaurentS()
    for name, c in combo.items():
        if name == CONSTANT:
            raise ValueError("Theta is not defined on constants")
        out = out + theta_closed(name).scale(c)
    return out


def theta_series(f: Series) -> Series:
    """Theta on a linear u-free series: p_k z^k -> (uz)^k (1 + uz)^(-2k)."""
    N = f.trunc
    out: dict = defaultdict(Fraction)
    for (m, j, mu), c in f.terms.items():
        if j or len(mu) != 1 or m != mu[0]:
            raise ValueError("Theta acts on linear combinations of p_k z^k")
        k = mu[0]
        for step, b in enumerate(binomial_series(Fraction(-2 * k), Fraction(1), N - k)):
            out[(k + step, k + step, EMPTY)] += c * b
    return Series.build(Chart.ZUP, N, out, graded=True)


# ----------------------------------------------------------------------
# D and its inverse
# ----------------------------------------------------------------------


def _d_atom(name: str) -> GreekCombo:
    family, i = parse_atom(name)
    half = Fraction(1, 2)
    if family == "gamma":
        return {"eta": 1, "gamma": 1}
    if family == "eta":
        return {atom_name("eta", i + 1): 1}
    if i == 0:
        return {"eta": half, "zeta": half}
    out: GreekCombo = {name: half * (2 * i + 1)}
    for j in range(1, i):
        key = atom_name("zeta", i - j)
        out[key] = out.get(key, 0) + half * (-1) ** (j - 1)
    edge = -((-1) ** i)
    out["zeta"] = out.get("zeta", 0) + edge
    out["eta"] = out.get("eta", 0) + edge
    return {k: v for k, v in out.items() if v}


def d_op(combo: GreekCombo) -> GreekCombo:
    """D on a linear combination of Greek variables (constants go to zero)."""
    parts, scales = [], []
    for name, c in combo.items():
        if name == CONSTANT:
            continue
        parts.append(_d_atom(name))
        scales.append(c)
    return combo_add(*parts, scales=scales)


def d_series(f: Series) -> Series:
    """D on a u-free series: multiplies p_mu z^m by m."""
    if not f.is_u_free():
        raise ValueError("D acts on u-free series")
    return f.map_coefficients(lambda key, c: c * key[0])


@lru_cache(maxsize=None)
def _inverse_d_zeta(i: int) -> tuple[tuple[str, Fraction], ...]:
    # From the D rule: (2i+1) X_i = 2 zeta_i - sum_j (-1)^(j-1) X_{i-j} + 4 (-1)^i zeta,
    # using D^-1 (zeta + eta) = 2 zeta.
    parts: list[GreekCombo] = [{atom_name("zeta", i): 2}, {"zeta": 4 * (-1) ** i}]
    scales: list = [1, 1]
    for j in range(1, i):
        parts.append(dict(_inverse_d_zeta(i - j)))
        scales.append(-((-1) ** (j - 1)))
    body = combo_add(*parts, scales=scales)
    return tuple(sorted((k, Fraction(v, 2 * i + 1)) for k, v in body.items()))


def inverse_d(combo: GreekCombo) -> GreekCombo:
    """D^-1 on the span of eta+gamma, zeta-gamma, eta_i and zeta_i."""
    c_gamma = combo.get("gamma", 0)
    c_eta = combo.get("eta", 0)
    c_zeta = combo.get("zeta", 0)
    if combo.get(CONSTANT):
        raise ValueError("Constants are not in the image of D")
    if c_gamma - (c_eta - c_zeta):
        raise ValueError(
            "Combination is not in the span of eta+gamma, zeta-gamma, eta_i, zeta_i"
        )
    parts: list[GreekCombo] = [{"gamma": 1}, {"zeta": 2, "gamma": -1}]
    scales: list = [c_eta, c_zeta]
    for name, c in combo.items():
        family, i = (None, 0) if name == CONSTANT else parse_atom(name)
        if i == 0:
            continue
        if family == "eta":
            parts.append({atom_name("eta", i - 1): 1})
        else:
            parts.append(dict(_inverse_d_zeta(i)))
        scales.append(c)
    return combo_add(*parts, scales=scales)


# ----------------------------------------------------------------------
# Inverting Theta
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _eta_leading(i: int) -> Fraction:
    return theta_closed(f"eta_{i}").coeffs[-(2 * i + 3)]


def theta_inverse_basis(q: LaurentS) -> dict[str, object]:
    """Coordinates of an odd q over Theta(eta+gamma), Theta(zeta-gamma), Theta eta_i, Theta zeta_i.

    Keys are "eta+gamma", "zeta-gamma", "eta_i" and "zeta_i". Each basis
    element is pinned down by its extreme exponent, so the solve is
    triangular from both ends.
    """
    if not q.is_odd():
        raise ValueError("theta_inverse needs an odd Laurent polynomial in s")
    rest = q
    out: dict[str, object] = {}
    while rest.coeffs and max(rest.coeffs) >= 3:
        top = max(rest.coeffs)
        i = (top - 1) // 2
        c = rest.coeffs[top] * 2
        out[f"zeta_{i}"] = c
        rest = rest - theta_closed(f"zeta_{i}").scale(c)
    if 1 in rest.coeffs:
        c = rest.coeffs[1] * 4
        out["zeta-gamma"] = c
        rest = rest - theta_closed("zeta-gamma").scale(c)
    while rest.coeffs and min(rest.coeffs) <= -5:
        bottom = min(rest.coeffs)
        i = (-bottom - 3) // 2
        c = rest.coeffs[bottom] * (1 / _eta_leading(i))
        out[f"eta_{i}"] = c
        rest = rest - theta_closed(f"eta_{i}").scale(c)
    if -3 in rest.coeffs:
        c = rest.coeffs[-3] * 4
        out["eta+gamma"] = c
        rest = rest - theta_closed("eta+gamma").scale(c)
    if rest:
        raise ValueError(
            "Laurent polynomial is not in (1/s - s) Q[s^2, 1/s^2]: it does not vanish at s = 1"
        )
    return out


def basis_to_combo(coords: Mapping[str, object]) -> GreekCombo:
    parts, scales = [], []
    for label, c in coords.items():
        if label == "eta+gamma":
            parts.append({"eta": 1, "gamma": 1})
        elif label == "zeta-gamma":
            parts.append({"zeta": 1, "gamma": -1})
        else:
            parts.append({label: 1})
        scales.append(c)
    return combo_add(*parts, scales=scales)


def theta_inverse(q: LaurentS) -> GreekCombo:
    """The Greek combination G with Theta G = q."""
    return basis_to_combo(theta_inverse_basis(q))


def check_theta_inverse(q: LaurentS) -> GreekCombo:
    combo = theta_inverse(q)
    if theta_of_combo(combo) != q:
        raise StructuralError("Theta(theta_inverse(q)) = q failed")
    return combo
