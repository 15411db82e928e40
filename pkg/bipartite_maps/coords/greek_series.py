"""
Greek variables as explicit linear series in p_k z^k.

Atom names: "gamma", "eta", "zeta", "eta_i" and "zeta_i" for i >= 1
("eta_0" is accepted for "eta"). A linear combination of atoms is a plain
dict from atom name to coefficient, with the key "1" for a constant.
"""

import re
from fractions import Fraction
from functools import lru_cache
from math import comb, prod

from bipartite_maps.series.partitions import EMPTY
from bipartite_maps.series.series import Chart, Series

GreekCombo = dict[str, object]

CONSTANT = "1"
_ATOM = re.compile(r"^(gamma|eta|zeta)(?:_(\d+))?$")


def catalan_weight(k: int) -> int:
    """C(2k-1, k), the coefficient of p_k z^k in gamma."""
    return comb(2 * k - 1, k)


def parse_atom(name: str) -> tuple[str, int]:
    """("eta", 2) for "eta_2"; the index is 0 for gamma, eta and zeta."""
    match = _ATOM.match(name)
    if not match:
        raise ValueError(f"Unknown Greek variable {name!r}")
    family, index = match.group(1), int(match.group(2) or 0)
    if family == "gamma" and index:
        raise ValueError(f"Unknown Greek variable {name!r}")
    if family == "zeta" and match.group(2) is not None and index == 0:
        raise ValueError("zeta_0 is not defined; use zeta")
    return family, index


def atom_name(family: str, index: int = 0) -> str:
    return family if index == 0 else f"{family}_{index}"


@lru_cache(maxsize=None)
def atom_coefficient(name: str, k: int) -> Fraction:
    """[p_k z^k] of the named Greek variable."""
    family, i = parse_atom(name)
    c = catalan_weight(k)
    if family == "gamma":
        return Fraction(c)
    if family == "eta":
        return Fraction((k - 1) * k**i * c)
    if i == 0:
        return Fraction(k - 1, 2 * k - 1) * c
    falling = prod(k - j for j in range(i + 1))
    odd = prod(2 * k - 2 * j - 1 for j in range(i + 1))
    return Fraction((-2) ** (i + 1) * falling, odd) * c


def greek_series(name: str, N: int) -> Series:
    """The named Greek variable through z^N as a u-free (z, u, p) series."""
    terms = {(k, 0, (k,)): atom_coefficient(name, k) for k in range(1, N + 1)}
    return Series.build(Chart.ZUP, N, terms, graded=True)


def combo_series(combo: GreekCombo, N: int) -> Series:
    """Series of a rational linear combination of atoms."""
    terms: dict = {}
    for name, c in combo.items():
        if not c:
            continue
        if name == CONSTANT:
            terms[(0, 0, EMPTY)] = terms.get((0, 0, EMPTY), 0) + Fraction(c)
            continue
        for k in range(1, N + 1):
            key = (k, 0, (k,))
            terms[key] = terms.get(key, 0) + Fraction(c) * atom_coefficient(name, k)
    return Series.build(Chart.ZUP, N, terms, graded=True)


def combo_add(*combos: GreekCombo, scales=None) -> GreekCombo:
    out: GreekCombo = {}
    scales = scales or [1] * len(combos)
    for combo, scale in zip(combos, scales):
        for name, c in combo.items():
            out[name] = out.get(name, 0) + c * scale
    return {name: c for name, c in out.items() if c}


def atom_sort_key(name: str) -> tuple[int, int]:
    if name == CONSTANT:
        return (0, 0)
    family, index = parse_atom(name)
    return ({"gamma": 1, "eta": 2, "zeta": 3}[family], index)
