"""
From the rooted series F_g to the unrooted series L_g.

The operators box, xi and pi act on Theta-images of Greek variables, and
linearly over Greek-field coefficients:

    box Theta: p_k z^k -> (1/k - gamma/(1 + gamma)) p_k z^k
    xi Theta:  p_k z^k -> p_k z^k / k        (xi Theta = D^-1)
    pi Theta:  p_k z^k -> p_k z^k

R = box F_g is the Euler derivative of L_g in the Greek variables, so
L_g = int_0^1 R(v * atoms) dv / v, integrated exactly by partial fractions
in v over QQ(eta, zeta).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable

from sympy.polys.domains import QQ
from sympy.polys.fields import field
from sympy.polys.rings import ring

from bipartite_maps.coords.greek_series import greek_series
from bipartite_maps.coords.kernel import to_fraction
from bipartite_maps.coords.theta import basis_to_combo, inverse_d, theta_inverse_basis
from bipartite_maps.errors import NonUnitError, StructuralError
from bipartite_maps.greek.field import (
    GEN_INDEX,
    GENS,
    ONE_MINUS_ETA,
    ONE_PLUS_ZETA,
    RING,
    ZERO,
    GreekElem,
    closed_form_elem,
    closed_form_terms,
    combo_to_elem,
    elem_to_laurent,
    gf_eval,
)
from bipartite_maps.models import ClosedFormL
from bipartite_maps.series.series import Chart, Series

logger = logging.getLogger(__name__)

GENUS_ONE_LOGS = (Fraction(1, 24), Fraction(1, 8))

_ETA_SLOT = GEN_INDEX["eta"]
_ZETA_SLOT = GEN_INDEX["zeta"]
_ONE_PLUS_GAMMA = RING.one + GENS["gamma"]

# coefficient field of the integration and polynomials in v over it
COEFF_FIELD, K_ETA, K_ZETA = field("eta,zeta", QQ)
V_RING, V = ring("v", COEFF_FIELD.to_domain())


@dataclass(frozen=True)
class GammaQuotient:
    """num / (1 + gamma)."""

    num: GreekElem

    def reduce(self) -> GreekElem:
        """The quotient as a Greek field element; (1 + gamma) must divide num."""
        gamma = GENS["gamma"]
        if self.num.num.subs(gamma, -1):
            raise StructuralError("box F is not divisible by (1 + gamma)")
        return GreekElem.make(
            self.num.num.exquo(_ONE_PLUS_GAMMA), self.num.shift, self.num.a, self.num.b
        )


# ----------------------------------------------------------------------
# box, xi and pi
# ----------------------------------------------------------------------


def linear_operator(func):
    """Register a function as a named operator on Theta-decompositions."""
    LinearOperators.register(func.__name__.removeprefix("apply_"), func)
    return func


class LinearOperators:
    _registry: dict[str, Callable] = {}

    @classmethod
    def register(cls, name, func):
        cls._registry[name] = func

    @classmethod
    def get(cls, name):
        return cls._registry.get(name)

    @classmethod
    def names(cls) -> list[str]:
        return sorted(cls._registry)


@lru_cache(maxsize=None)
def basis_elem(label: str) -> GreekElem:
    """The Greek combination behind a Theta-basis label."""
    return combo_to_elem(basis_to_combo({label: 1}))


@lru_cache(maxsize=None)
def inverse_d_elem(label: str) -> GreekElem:
    return combo_to_elem(inverse_d(basis_to_combo({label: 1})))


def theta_decompose(e: GreekElem) -> dict[str, GreekElem]:
    """Coordinates of an odd element over the Theta-basis, with s-free coefficients."""
    if not e.is_odd_in_s():
        raise StructuralError("The Theta-decomposition needs an element odd under s -> -s")
    coords = theta_inverse_basis(elem_to_laurent(e))
    return {label: GreekElem.coerce(c) for label, c in coords.items()}


@linear_operator
def apply_xi(coords: dict[str, GreekElem]) -> GreekElem:
    out = ZERO
    for label, c in coords.items():
        out = out + c * inverse_d_elem(label)
    return out


@linear_operator
def apply_pi(coords: dict[str, GreekElem]) -> GreekElem:
    out = ZERO
    for label, c in coords.items():
        out = out + c * basis_elem(label)
    return out


@linear_operator
def apply_box(coords: dict[str, GreekElem]) -> GammaQuotient:
    gamma = GreekElem.atom("gamma")
    num = (gamma + 1) * apply_xi(coords) - gamma * apply_pi(coords)
    return GammaQuotient(num)


def linear_ops(e: GreekElem, which: str) -> GreekElem | GammaQuotient:
    op = LinearOperators.get(which)
    if op is None:
        raise ValueError(f"Unknown operator {which!r}; choose from {LinearOperators.names()}")
    return op(theta_decompose(e))


# ----------------------------------------------------------------------
# Exact integration in v
# ----------------------------------------------------------------------


def _eta_zeta_monom(i: int, j: int) -> tuple[int, ...]:
    monom = [0] * len(GENS)
    monom[_ETA_SLOT], monom[_ZETA_SLOT] = i, j
    return tuple(monom)


def _from_k(x) -> GreekElem:
    """Back from QQ(eta, zeta); the denominator must be a unit of the Greek field."""
    num, den = (
        RING.from_dict({_eta_zeta_monom(i, j): c for (i, j), c in poly.items()})
        for poly in (x.numer, x.denom)
    )
    try:
        return GreekElem.make(num) / GreekElem.make(den)
    except NonUnitError as exc:
        raise StructuralError(
            f"Unrooted series has a denominator outside (1-eta)(1+zeta): {x.denom}"
        ) from exc


def _split_monomials(e: GreekElem) -> dict[tuple[int, ...], dict[tuple[int, int], object]]:
    """Group the numerator by the monomial in atoms other than eta and zeta."""
    groups: dict[tuple[int, ...], dict[tuple[int, int], object]] = {}
    for monom, c in e.num.items():
        rest = list(monom)
        i, j = rest[_ETA_SLOT], rest[_ZETA_SLOT]
        rest[_ETA_SLOT] = rest[_ZETA_SLOT] = 0
        groups.setdefault(tuple(rest), {})[(i, j)] = c
    return groups


def _coeff_list(p, length: int) -> list:
    out = [COEFF_FIELD.zero] * length
    for (n,), c in p.items():
        if n < length:
            out[n] = c
    return out


def _binomial_inverse(length: int, lead, ratio, power: int) -> object:
    """lead^-power (1 - ratio X)^-power through X^(length-1), as a polynomial in v."""
    out = V_RING.zero
    for n in range(length):
        out += V_RING(lead ** (-power) * comb(power + n - 1, n) * ratio**n) * V**n
    return out


def _local_parts(rem, a: int, b: int) -> tuple[list, list]:
    """alpha_k, beta_k with rem/(U^a V^b) = sum alpha_k U^-k + sum beta_k V^-k."""
    alpha, beta = [COEFF_FIELD.zero] * (a + 1), [COEFF_FIELD.zero] * (b + 1)
    if a:
        # X = U = 1 - eta v
        shifted = rem.compose(V, (1 - V) * V_RING(1 / K_ETA))
        if b:
            shifted = shifted * _binomial_inverse(
                a, (K_ETA + K_ZETA) / K_ETA, K_ZETA / (K_ETA + K_ZETA), b
            )
        coeffs = _coeff_list(shifted, a)
        for k in range(1, a + 1):
            alpha[k] = coeffs[a - k]
    if b:
        # Y = V = 1 + zeta v
        shifted = rem.compose(V, (V - 1) * V_RING(1 / K_ZETA))
        if a:
            shifted = shifted * _binomial_inverse(
                b, (K_ZETA + K_ETA) / K_ZETA, K_ETA / (K_ZETA + K_ETA), a
            )
        coeffs = _coeff_list(shifted, b)
        for k in range(1, b + 1):
            beta[k] = coeffs[b - k]
    return alpha, beta


def integrate_v(p, a: int, b: int) -> tuple[object, object, object]:
    """int_0^1 p(v) / ((1 - eta v)^a (1 + zeta v)^b) dv.

    Returns (rational part, coefficient of ln(1/(1-eta)), coefficient of ln(1/(1+zeta))).
    """
    denominator = (1 - V_RING(K_ETA) * V) ** a * (1 + V_RING(K_ZETA) * V) ** b
    quotient, rem = p.div(denominator)
    rational = COEFF_FIELD.zero
    for (j,), c in quotient.items():
        rational += c / (j + 1)
    alpha, beta = _local_parts(rem, a, b)
    E, Z = 1 - K_ETA, 1 + K_ZETA
    for k in range(2, a + 1):
        rational += alpha[k] * (E ** (1 - k) - 1) / ((k - 1) * K_ETA)
    for k in range(2, b + 1):
        rational += beta[k] * (1 - Z ** (1 - k)) / ((k - 1) * K_ZETA)
    log_eta = alpha[1] / K_ETA if a else COEFF_FIELD.zero
    log_zeta = -beta[1] / K_ZETA if b else COEFF_FIELD.zero
    return rational, log_eta, log_zeta


def integrate_euler(R: GreekElem) -> tuple[GreekElem, GreekElem, GreekElem]:
    """int_0^1 R(v * atoms) dv / v for an s-free R vanishing at the Greek origin."""
    if not R.is_s_free():
        raise ValueError("integrate_euler needs an s-free element")
    rational, log_eta, log_zeta = ZERO, ZERO, ZERO
    for rest, terms in _split_monomials(R).items():
        degree = sum(rest)
        M = GreekElem.make(RING.from_dict({tuple(rest): RING.domain.one}))
        p = V_RING.zero
        for (i, j), c in terms.items():
            power = degree + i + j - 1
            if power < 0:
                raise StructuralError("box F does not vanish at the Greek origin")
            p += V_RING(COEFF_FIELD(c) * K_ETA**i * K_ZETA**j) * V**power
        part, le, lz = integrate_v(p, R.a, R.b)
        rational = rational + M * _from_k(part)
        log_eta = log_eta + M * _from_k(le)
        log_zeta = log_zeta + M * _from_k(lz)
    return rational, log_eta, log_zeta


# ----------------------------------------------------------------------
# L_g
# ----------------------------------------------------------------------


def box_of_F(F: GreekElem) -> GreekElem:
    return apply_box(theta_decompose(F)).reduce()


def _value_at_origin(e: GreekElem) -> Fraction:
    return to_fraction(e.num.coeff(RING.one)) if e.num else Fraction(0)


def unroot_L(g: int, F: GreekElem) -> ClosedFormL:
    """Closed form of L_g from the closed form of F_g."""
    if g < 1:
        raise ValueError(f"unroot_L needs g >= 1, got {g}")
    R = box_of_F(F)
    rational, log_eta, log_zeta = integrate_euler(R)
    logs = []
    for name, coeff in (("ln(1/(1-eta))", log_eta), ("ln(1/(1+zeta))", log_zeta)):
        if coeff and not coeff.is_constant():
            raise StructuralError(f"Coefficient of {name} in L_{g} is not a constant")
        logs.append(coeff.to_fraction())
    if g >= 2 and any(logs):
        raise StructuralError(f"Logarithms do not cancel in L_{g}: {logs}")
    if g == 1 and tuple(logs) != GENUS_ONE_LOGS:
        raise StructuralError(f"L_1 has logarithmic part {logs}, expected {list(GENUS_ONE_LOGS)}")
    if _value_at_origin(rational):
        raise StructuralError(f"L_{g} does not vanish at the Greek origin")
    logger.info(f"Unrooted L_{g}: rational part with {len(rational.num.terms())} numerator terms")
    return ClosedFormL(g, closed_form_terms(rational), logs[0], logs[1])


def log_series(N: int, log_eta: Fraction, log_zeta: Fraction) -> Series:
    """log_eta ln(1/(1-eta)) + log_zeta ln(1/(1+zeta)) through z^N."""
    out = Series.zero(Chart.ZUP, N)
    eta, zeta = greek_series("eta", N), greek_series("zeta", N)
    eta_power, zeta_power = eta, zeta
    for n in range(1, N + 1):
        if log_eta:
            out = out + eta_power.scale(Fraction(log_eta) / n)
        if log_zeta:
            out = out + zeta_power.scale(Fraction(log_zeta) * (-1) ** n / n)
        eta_power, zeta_power = eta_power * eta, zeta_power * zeta
    return out


def closed_form_series(L: ClosedFormL, N: int) -> Series:
    """Series of a closed-form L_g, logarithms included."""
    out = gf_eval(closed_form_elem(L.terms), N)
    if L.log_eta or L.log_zeta:
        out = out + log_series(N, L.log_eta, L.log_zeta)
    return out


def reference_l2() -> GreekElem:
    """L_2 as displayed in the literature.

    The display uses a zeta_1 that is -2 times the zeta_1 of this package.
    """
    eta_1, eta_2, eta_3 = (GreekElem.atom(f"eta_{i}") for i in (1, 2, 3))
    zeta_1 = GreekElem.atom("zeta_1") * -2
    E, Z = GreekElem.make(ONE_MINUS_ETA), GreekElem.make(ONE_PLUS_ZETA)
    return (
        Fraction(1, 120)
        - eta_1 * (eta_1 * 185 - eta_2 * 58) / (E**4 * 23040)
        - (eta_3 * 20 - eta_2 * 168 + eta_1 * 415) / (E**3 * 46080)
        - Fraction(53, 15360) / E**2
        - eta_1**3 * Fraction(7, 2880) / E**5
        - Fraction(1, 512) / (E * Z)
        + eta_1 / (E**2 * Z * 1536)
        - Fraction(3, 1024) / Z**2
        + zeta_1 * Fraction(3, 8192) / Z**3
    )
