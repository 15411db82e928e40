"""
The Greek field: rational functions in the Greek variables and s whose only
denominators are powers of s, (1 - eta) and (1 + zeta).

An element is stored as

    num * s^shift * (1 - eta)^-a * (1 + zeta)^-b

with num a polynomial over QQ in the Greek atoms and s. The stored form is
canonical (num has no factor s, and no factor (1 - eta) or (1 + zeta) while
the matching exponent is positive), so equality is structural.
"""

import logging
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Literal

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from bipartite_maps.coords.change_of_variables import CoordData, s_power_series
from bipartite_maps.coords.greek_series import CONSTANT, greek_series, parse_atom
from bipartite_maps.coords.kernel import to_fraction
from bipartite_maps.coords.theta import LaurentS
from bipartite_maps.errors import NonUnitError, StructuralError
from bipartite_maps.models import BasisTerm, ClosedFormTerm
from bipartite_maps.series.partitions import make_partition
from bipartite_maps.series.series import Chart, Series

logger = logging.getLogger(__name__)

GREEK_INDEX = 16

ATOM_NAMES = (
    ["gamma", "eta", "zeta"]
    + [f"eta_{i}" for i in range(1, GREEK_INDEX + 1)]
    + [f"zeta_{i}" for i in range(1, GREEK_INDEX + 1)]
)
GEN_NAMES = ["s"] + ATOM_NAMES

RING, *_GENS = ring(",".join(GEN_NAMES), QQ)
GENS: dict[str, PolyElement] = dict(zip(GEN_NAMES, _GENS))
GEN_INDEX: dict[str, int] = {name: i for i, name in enumerate(GEN_NAMES)}

S_GEN = GENS["s"]
ETA_GEN = GENS["eta"]
ZETA_GEN = GENS["zeta"]
ONE_MINUS_ETA = RING.one - ETA_GEN
ONE_PLUS_ZETA = RING.one + ZETA_GEN

Rational = Fraction | int


def to_qq(c: Rational):
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def _strip_s(num: PolyElement) -> tuple[PolyElement, int]:
    low = min(monom[0] for monom in num.keys())
    if not low:
        return num, 0
    terms = {(monom[0] - low, *monom[1:]): c for monom, c in num.items()}
    return RING.from_dict(terms), low


class GreekElem:
    __slots__ = ("num", "shift", "a", "b")

    def __init__(self, num: PolyElement, shift: int = 0, a: int = 0, b: int = 0):
        # callers go through make(); this only stores
        self.num = num
        self.shift = shift
        self.a = a
        self.b = b

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def make(cls, num: PolyElement, shift: int = 0, a: int = 0, b: int = 0) -> "GreekElem":
        if not num:
            return cls(RING.zero)
        if a < 0:
            num, a = num * ONE_MINUS_ETA ** (-a), 0
        if b < 0:
            num, b = num * ONE_PLUS_ZETA ** (-b), 0
        num, low = _strip_s(num)
        shift += low
        while a > 0 and not num.subs(ETA_GEN, 1):
            num = num.exquo(ONE_MINUS_ETA)
            a -= 1
        while b > 0 and not num.subs(ZETA_GEN, -1):
            num = num.exquo(ONE_PLUS_ZETA)
            b -= 1
        return cls(num, shift, a, b)

    @classmethod
    def const(cls, c: Rational) -> "GreekElem":
        return cls.make(RING.ground_new(to_qq(c)))

    @classmethod
    def atom(cls, name: str) -> "GreekElem":
        if name not in GENS:
            family, index = parse_atom(name)
            if family == "eta" and index == 0:
                name = "eta"
            else:
                raise ValueError(f"Greek variable {name!r} is beyond index {GREEK_INDEX}")
        return cls.make(GENS[name])

    @classmethod
    def s(cls, power: int = 1) -> "GreekElem":
        return cls(RING.one, power)

    @classmethod
    def coerce(cls, other) -> "GreekElem | None":
        if isinstance(other, GreekElem):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.const(other)
        return None

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    def _key(self):
        return (frozenset(self.num.items()), self.shift, self.a, self.b)

    def __eq__(self, other) -> bool:
        other = GreekElem.coerce(other)
        if other is None:
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        parts = [f"({self.num})"]
        if self.shift:
            parts.append(f"s^{self.shift}")
        if self.a:
            parts.append(f"(1-eta)^-{self.a}")
        if self.b:
            parts.append(f"(1+zeta)^-{self.b}")
        return " * ".join(parts)

    def is_constant(self) -> bool:
        return not self.shift and not self.a and not self.b and self.num.is_ground

    def to_fraction(self) -> Fraction:
        if not self.num:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self!r} is not a rational constant")
        return to_fraction(self.num.LC)

    def atoms(self) -> set[str]:
        """Names of the atoms (and "s") this element depends on."""
        used: set[str] = set()
        for monom in self.num.keys():
            used.update(GEN_NAMES[i] for i, e in enumerate(monom) if e)
        if self.shift:
            used.add("s")
        if self.a:
            used.add("eta")
        if self.b:
            used.add("zeta")
        return used

    def is_s_free(self) -> bool:
        return "s" not in self.atoms()

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _lift(self, shift: int, a: int, b: int) -> PolyElement:
        return (
            self.num
            * S_GEN ** (self.shift - shift)
            * ONE_MINUS_ETA ** (a - self.a)
            * ONE_PLUS_ZETA ** (b - self.b)
        )

    def __add__(self, other) -> "GreekElem":
        other = GreekElem.coerce(other)
        if other is None:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        shift = min(self.shift, other.shift)
        a, b = max(self.a, other.a), max(self.b, other.b)
        return GreekElem.make(self._lift(shift, a, b) + other._lift(shift, a, b), shift, a, b)

    __radd__ = __add__

    def __neg__(self) -> "GreekElem":
        return GreekElem(-self.num, self.shift, self.a, self.b)

    def __sub__(self, other) -> "GreekElem":
        other = GreekElem.coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "GreekElem":
        return (-self) + other

    def __mul__(self, other) -> "GreekElem":
        if isinstance(other, (int, Fraction)):
            if not other:
                return GreekElem(RING.zero)
            return GreekElem(self.num * to_qq(other), self.shift, self.a, self.b)
        if not isinstance(other, GreekElem):
            return NotImplemented
        return GreekElem.make(
            self.num * other.num, self.shift + other.shift, self.a + other.a, self.b + other.b
        )

    __rmul__ = __mul__

    def invert(self) -> "GreekElem":
        """Inverse of c s^j (1 - eta)^m (1 + zeta)^n; anything else is not a unit."""
        num, m, n = self.num, 0, 0
        if not num:
            raise NonUnitError("Zero is not invertible in the Greek field")
        while not num.subs(ETA_GEN, 1):
            num, m = num.exquo(ONE_MINUS_ETA), m + 1
        while not num.subs(ZETA_GEN, -1):
            num, n = num.exquo(ONE_PLUS_ZETA), n + 1
        if not num.is_ground:
            raise NonUnitError(f"{self!r} is not a unit of the Greek field")
        return GreekElem.make(RING.ground_new(1 / num.LC), -self.shift, m - self.a, n - self.b)

    def __truediv__(self, other) -> "GreekElem":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = GreekElem.coerce(other)
        if other is None:
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other) -> "GreekElem":
        return GreekElem.const(other) * self.invert()

    def __pow__(self, e: int) -> "GreekElem":
        if e < 0:
            return self.invert() ** (-e)
        result = GreekElem.const(1)
        for _ in range(e):
            result = result * self
        return result

    # ------------------------------------------------------------------
    # Structure in s
    # ------------------------------------------------------------------

    def s_laurent(self) -> dict[int, "GreekElem"]:
        """Coefficients of each power of s, themselves free of s."""
        groups: dict[int, dict] = defaultdict(dict)
        for monom, c in self.num.items():
            groups[monom[0] + self.shift][(0, *monom[1:])] = c
        return {
            j: GreekElem.make(RING.from_dict(terms), 0, self.a, self.b)
            for j, terms in sorted(groups.items())
        }

    def negate_s(self) -> "GreekElem":
        """The element with s replaced by -s."""
        terms = {monom: c * (-1) ** monom[0] for monom, c in self.num.items()}
        sign = (-1) ** (self.shift % 2)
        return GreekElem(RING.from_dict(terms) * sign, self.shift, self.a, self.b)

    def is_odd_in_s(self) -> bool:
        return self.negate_s() == -self

    # ------------------------------------------------------------------
    # Derivatives
    # ------------------------------------------------------------------

    def diff(self, name: str) -> "GreekElem":
        """Partial derivative with respect to an atom or s."""
        gen = GENS[name]
        d = self.num.diff(gen)
        if name == "eta":
            return GreekElem.make(ONE_MINUS_ETA * d + self.a * self.num, self.shift, self.a + 1, self.b)
        if name == "zeta":
            return GreekElem.make(ONE_PLUS_ZETA * d - self.b * self.num, self.shift, self.a, self.b + 1)
        if name == "s":
            return GreekElem.make(S_GEN * d + self.shift * self.num, self.shift - 1, self.a, self.b)
        return GreekElem.make(d, self.shift, self.a, self.b)


ZERO = GreekElem(RING.zero)
ONE = GreekElem.const(1)


def laurent_to_elem(q: LaurentS) -> GreekElem:
    """sum_m c_m s^m for a Laurent polynomial with rational or Greek coefficients."""
    out = ZERO
    for m, c in q.coeffs.items():
        out = out + GreekElem.s(m) * c
    return out


def elem_to_laurent(e: GreekElem) -> LaurentS:
    return LaurentS.build(e.s_laurent())


def one_minus_w_inverse() -> GreekElem:
    """1/(1 - uz) = (1 + 1/s)/2."""
    return (GreekElem.s(-1) + 1) * Fraction(1, 2)


def one_plus_w_inverse() -> GreekElem:
    """1/(1 + uz) = (1 + s)/2."""
    return (GreekElem.s(1) + 1) * Fraction(1, 2)


# ----------------------------------------------------------------------
# Series evaluation
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _atom_power(name: str, power: int, N: int) -> Series:
    return greek_series(name, N) ** power


@lru_cache(maxsize=4096)
def _monomial_series(exps: tuple[int, ...], N: int) -> Series:
    """Product of atom powers; exps is indexed like ATOM_NAMES."""
    out = Series.constant(Chart.ZUP, N)
    for name, e in zip(ATOM_NAMES, exps):
        if e:
            out = out * _atom_power(name, e, N)
    return out.with_grading(True)


@lru_cache(maxsize=None)
def _denominator_series(a: int, b: int, N: int) -> Series:
    out = Series.constant(Chart.ZUP, N)
    if a:
        out = out * (1 - greek_series("eta", N)).inverse() ** a
    if b:
        out = out * (1 + greek_series("zeta", N)).inverse() ** b
    return out


@lru_cache(maxsize=None)
def _s_power(m: int, N: int) -> Series:
    return s_power_series(m, N)


def gf_eval(e: GreekElem, N: int) -> Series:
    """Expand e as a (z, u, p) series through z^N."""
    by_s: dict[int, Series] = {}
    for monom, c in e.num.items():
        j = monom[0] + e.shift
        term = _monomial_series(tuple(monom[1:]), N).scale(to_fraction(c))
        by_s[j] = by_s[j] + term if j in by_s else term
    total = Series.zero(Chart.ZUP, N)
    for j, poly in by_s.items():
        total = total + _s_power(j, N) * poly
    if e.a or e.b:
        total = total * _denominator_series(e.a, e.b, N)
    return total.with_grading(total.check_grading())


def gf_normalize_eval(
    e: GreekElem, mode: Literal["normalize", "eval"] = "normalize", coords: CoordData | None = None
) -> GreekElem | Series:
    """Canonical form of e, or its series expansion at the truncation of coords."""
    if mode == "normalize":
        return GreekElem.make(e.num, e.shift, e.a, e.b)
    if mode == "eval":
        if coords is None:
            raise ValueError("eval mode needs coordinate data")
        return gf_eval(e, coords.N)
    raise ValueError(f"Unknown mode {mode!r}")


# ----------------------------------------------------------------------
# Closed-form terms
# ----------------------------------------------------------------------


def _partition_from(exps: Iterable[int]) -> tuple[int, ...]:
    parts = []
    for i, e in enumerate(exps, start=1):
        parts.extend([i] * e)
    return make_partition(parts)


def greek_terms(e: GreekElem) -> list[tuple[tuple[int, ...], tuple[int, ...], int, int, Fraction]]:
    """(alpha, beta, a, b, coeff) with e = sum coeff eta_alpha zeta_beta (1-eta)^-a (1+zeta)^-b."""
    if not e.is_s_free():
        raise ValueError("greek_terms needs an s-free element")
    # eta = 1 - E, zeta = Z - 1, with E and Z stored in the eta and zeta slots
    shifted = e.num.compose([(ETA_GEN, RING.one - ETA_GEN), (ZETA_GEN, ZETA_GEN - RING.one)])
    g_idx, e_idx, z_idx = GEN_INDEX["gamma"], GEN_INDEX["eta"], GEN_INDEX["zeta"]
    first_eta = GEN_INDEX["eta_1"]
    first_zeta = GEN_INDEX["zeta_1"]
    out = []
    for monom, c in shifted.items():
        if monom[g_idx]:
            raise StructuralError(f"gamma survives in a closed-form numerator of {e!r}")
        a, b = e.a - monom[e_idx], e.b - monom[z_idx]
        if a < 0 or b < 0:
            raise StructuralError(
                f"{e!r} has a positive power of (1-eta) or (1+zeta) after expansion"
            )
        alpha = _partition_from(monom[first_eta : first_eta + GREEK_INDEX])
        beta = _partition_from(monom[first_zeta : first_zeta + GREEK_INDEX])
        out.append((alpha, beta, a, b, to_fraction(c)))
    return out


def closed_form_terms(e: GreekElem) -> list[ClosedFormTerm]:
    """Rewrite e over eta_alpha zeta_beta (1-eta)^-a (1+zeta)^-b (1 -+ uz)^-c.

    Negative powers of s go to the pole at u = 1/z through s^-1 = 2/(1-uz) - 1,
    positive powers to u = -1/z through s = 2/(1+uz) - 1.
    """
    by_pole: dict[tuple[int, str], GreekElem] = defaultdict(lambda: ZERO)
    for j, coeff in e.s_laurent().items():
        if j == 0:
            by_pole[(0, "")] = by_pole[(0, "")] + coeff
            continue
        sign = "+" if j < 0 else "-"
        m = abs(j)
        for c in range(m + 1):
            weight = comb(m, c) * 2**c * (-1) ** (m - c)
            key = (c, sign) if c else (0, "")
            by_pole[key] = by_pole[key] + coeff * weight
    terms = []
    for (c, sign), coeff in by_pole.items():
        if not coeff:
            continue
        for alpha, beta, a, b, value in greek_terms(coeff):
            terms.append(ClosedFormTerm(BasisTerm(alpha, beta, a, b, c, sign), value))
    terms.sort(key=lambda t: term_sort_key(t.term))
    return terms


def term_sort_key(term: BasisTerm) -> tuple:
    return (
        {"+": 0, "-": 1, "": 2}[term.sign],
        -term.c,
        term.greek_size(),
        term.alpha,
        term.beta,
        term.a,
        term.b,
    )


def basis_term_elem(term: BasisTerm) -> GreekElem:
    out = ONE
    for i in term.alpha:
        out = out * GreekElem.atom(f"eta_{i}")
    for i in term.beta:
        out = out * GreekElem.atom(f"zeta_{i}")
    out = out / (GreekElem.make(ONE_MINUS_ETA) ** term.a) / (GreekElem.make(ONE_PLUS_ZETA) ** term.b)
    if term.sign == "+":
        out = out * one_minus_w_inverse() ** term.c
    elif term.sign == "-":
        out = out * one_plus_w_inverse() ** term.c
    return out


def closed_form_elem(terms: Iterable[ClosedFormTerm]) -> GreekElem:
    out = ZERO
    for t in terms:
        out = out + basis_term_elem(t.term) * t.coeff
    return out


def combo_to_elem(combo) -> GreekElem:
    """A linear combination of atoms (with "1" for the constant) as a field element."""
    out = ZERO
    for name, c in combo.items():
        term = ONE if name == CONSTANT else GreekElem.atom(name)
        out = out + term * c
    return out
