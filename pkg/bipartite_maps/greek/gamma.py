"""
The derivation Gamma = sum_k k x^k d/dp_k on the Greek field.

Gamma is taken at fixed (t, x), so on z, u and s it is nonzero:

    Gamma z / z = s^-2 (1/s - s) / (4 (1 - eta))
    Gamma u / u = s^-2 (1/s - 1) (1/s - s) / (4 (1 - eta))
    Gamma s     = -(1/s - s)^2 / (8 (1 - eta) s^2)

On a Greek atom G, Gamma G = (Gamma z / z) D G + Theta(D G). Everything else
follows from the chain rule.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from bipartite_maps.coords.change_of_variables import CoordData
from bipartite_maps.coords.derivatives import gamma_series_zup
from bipartite_maps.coords.greek_series import CONSTANT, parse_atom
from bipartite_maps.coords.theta import d_op, theta_of_combo
from bipartite_maps.greek.field import (
    ONE,
    ONE_MINUS_ETA,
    ONE_PLUS_ZETA,
    ZERO,
    GreekElem,
    combo_to_elem,
    gf_eval,
    laurent_to_elem,
)
from bipartite_maps.models import BasisTerm

logger = logging.getLogger(__name__)

_E = GreekElem.make(ONE_MINUS_ETA)
_Z = GreekElem.make(ONE_PLUS_ZETA)
_S_MINUS = GreekElem.s(-1) - GreekElem.s(1)


@lru_cache(maxsize=None)
def gamma_of_z() -> GreekElem:
    """Gamma z / z."""
    return GreekElem.s(-2) * _S_MINUS / (_E * 4)


@lru_cache(maxsize=None)
def gamma_of_u() -> GreekElem:
    """Gamma u / u."""
    return GreekElem.s(-2) * (GreekElem.s(-1) - 1) * _S_MINUS / (_E * 4)


@lru_cache(maxsize=None)
def gamma_of_s() -> GreekElem:
    return -(_S_MINUS**2) * GreekElem.s(-2) / (_E * 8)


@lru_cache(maxsize=None)
def gamma_of_atom(name: str) -> GreekElem:
    if name == "s":
        return gamma_of_s()
    combo = d_op({name: 1})
    return gamma_of_z() * combo_to_elem(combo) + laurent_to_elem(theta_of_combo(combo))


def gamma_calc(e: GreekElem) -> GreekElem:
    """Gamma e by the chain rule over every atom e depends on."""
    out = ZERO
    for name in sorted(e.atoms()):
        partial = e.diff(name)
        if partial:
            out = out + partial * gamma_of_atom(name)
    return out


def gamma_series_check(e: GreekElem, coords: CoordData) -> bool:
    """Series of gamma_calc(e) against the series-level Gamma of e."""
    N = coords.N
    lhs = gf_eval(gamma_calc(e), N).truncate(N - 1)
    rhs = gamma_series_zup(gf_eval(e, N), coords)
    return lhs == rhs


# ----------------------------------------------------------------------
# Monomials and degrees
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class GreekMonomial:
    """coeff * prod atoms^e * s^s_power * (1 - eta)^-a * (1 + zeta)^-b."""

    atoms: tuple[tuple[str, int], ...] = ()
    s_power: int = 0
    a: int = 0
    b: int = 0
    coeff: Fraction = field(default=Fraction(1), compare=False)

    @classmethod
    def build(cls, atoms: dict[str, int], s_power=0, a=0, b=0, coeff=Fraction(1)):
        return cls(tuple(sorted((k, e) for k, e in atoms.items() if e)), s_power, a, b, Fraction(coeff))

    def exponents(self) -> dict[str, int]:
        return dict(self.atoms)

    def __mul__(self, other: "GreekMonomial") -> "GreekMonomial":
        exps = self.exponents()
        for name, e in other.atoms:
            exps[name] = exps.get(name, 0) + e
        return GreekMonomial.build(
            exps,
            self.s_power + other.s_power,
            self.a + other.a,
            self.b + other.b,
            self.coeff * other.coeff,
        )

    def to_elem(self) -> GreekElem:
        out = ONE * self.coeff
        for name, e in self.atoms:
            out = out * GreekElem.atom(name) ** e
        return out * GreekElem.s(self.s_power) / (_E**self.a) / (_Z**self.b)


def _index_weight(name: str) -> int:
    family, i = parse_atom(name)
    return 2 * i if family != "gamma" else 0


def degrees(term: GreekMonomial | BasisTerm) -> tuple[int, int, int]:
    """(deg_gamma, deg_plus, deg_minus), additive over factors."""
    if isinstance(term, BasisTerm):
        greek = 2 * term.greek_size()
        deg_gamma = term.greek_length() - term.a - term.b
        plus = greek + (term.c if term.sign == "+" else 0)
        minus = greek + (term.c if term.sign == "-" else 0)
        return deg_gamma, plus, minus
    count = sum(e for _, e in term.atoms)
    greek = sum(_index_weight(name) * e for name, e in term.atoms)
    return count - term.a - term.b, greek - term.s_power, greek + term.s_power


def _linear_monomials(combo) -> list[GreekMonomial]:
    out = []
    for name, c in combo.items():
        atoms = {} if name == CONSTANT else {name: 1}
        out.append(GreekMonomial.build(atoms, coeff=c))
    return out


@lru_cache(maxsize=None)
def _gamma_atom_monomials(name: str) -> tuple[GreekMonomial, ...]:
    quarter = Fraction(1, 4)
    if name == "s":
        # -(s^-4 - 2 s^-2 + 1) / (8 (1 - eta))
        return tuple(
            GreekMonomial.build({}, p, 1, 0, c)
            for p, c in [(-4, Fraction(-1, 8)), (-2, quarter), (0, Fraction(-1, 8))]
        )
    combo = d_op({name: 1})
    ratio = [GreekMonomial.build({}, -3, 1, 0, quarter), GreekMonomial.build({}, -1, 1, 0, -quarter)]
    out = [r * m for r in ratio for m in _linear_monomials(combo)]
    out += [
        GreekMonomial.build({}, p, 0, 0, c) for p, c in theta_of_combo(combo).coeffs.items()
    ]
    return tuple(out)


def gamma_monomial(term: GreekMonomial) -> list[GreekMonomial]:
    """Gamma of a monomial as an unsimplified list of monomials (product form)."""
    out: list[GreekMonomial] = []
    exps = term.exponents()
    for name, e in term.atoms:
        rest = dict(exps)
        rest[name] -= 1
        base = GreekMonomial.build(rest, term.s_power, term.a, term.b, term.coeff * e)
        out += [base * m for m in _gamma_atom_monomials(name)]
    if term.s_power:
        base = GreekMonomial.build(exps, term.s_power - 1, term.a, term.b, term.coeff * term.s_power)
        out += [base * m for m in _gamma_atom_monomials("s")]
    if term.a:
        base = GreekMonomial.build(exps, term.s_power, term.a + 1, term.b, term.coeff * term.a)
        out += [base * m for m in _gamma_atom_monomials("eta")]
    if term.b:
        base = GreekMonomial.build(exps, term.s_power, term.a, term.b + 1, -term.coeff * term.b)
        out += [base * m for m in _gamma_atom_monomials("zeta")]
    return out


def random_monomial(rng: random.Random, index: int = 3) -> GreekMonomial:
    names = ["gamma", "eta", "zeta"] + [f"{f}_{i}" for f in ("eta", "zeta") for i in range(1, index + 1)]
    atoms = {name: rng.randint(0, 2) for name in rng.sample(names, rng.randint(0, 3))}
    return GreekMonomial.build(
        atoms, rng.randint(-4, 4), rng.randint(0, 3), rng.randint(0, 3), rng.randint(1, 9)
    )


def degree_drop_holds(term: GreekMonomial) -> bool:
    """deg_gamma drops by one on every term of Gamma T; pole degrees grow by at most 5 and 1."""
    g, plus, minus = degrees(term)
    for m in gamma_monomial(term):
        mg, mp, mm = degrees(m)
        if mg != g - 1 or mp > plus + 5 or mm > minus + 1:
            logger.debug(f"Degree bound fails on {m} from {term}")
            return False
    return True
