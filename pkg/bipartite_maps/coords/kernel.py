"""
The kernel Y = 1 - 2 t x F_0 - t x theta with p_i = 0 for i > K.

In (z, u) coordinates, after clearing u^(K-1) (1 + gamma) (1 + uz), the kernel
is a polynomial with an explicit factor (1 - uz):

    Y u^(K-1) (1 + gamma) (1 + uz) = Nu(u) (1 - uz)

All objects here are exact polynomials in QQ[u, z, p_1..p_K].
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

from bipartite_maps.coords.greek_series import catalan_weight
from bipartite_maps.errors import StructuralError

logger = logging.getLogger(__name__)

U, Z = 0, 1


def to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


@dataclass(frozen=True)
class KernelData:
    K: int
    ring: PolyRing
    theta_num: PolyElement  # theta = theta_num / u^K
    f0: PolyElement
    gamma: PolyElement
    y_num: PolyElement
    y_den: PolyElement
    nu: PolyElement

    @property
    def u(self) -> PolyElement:
        return self.ring.gens[U]

    @property
    def z(self) -> PolyElement:
        return self.ring.gens[Z]

    def p(self, k: int) -> PolyElement:
        return self.ring.gens[Z + k]

    def nu_degree(self) -> int:
        return self.nu.degree(self.u)

    def y_cleared(self) -> PolyElement:
        """u^K (1 + uz)^2 (1 + gamma) Y, expanded from Y = 1 - 2 t x F_0 - t x theta.

        In (z, u) coordinates t x = u z / ((1 + uz)^2 (1 + gamma)).
        """
        u, z = self.u, self.z
        w = u * z
        return u**self.K * (1 + w) ** 2 * (1 + self.gamma) - w * (2 * u**self.K * self.f0 + self.theta_num)

    def factorization_holds(self) -> bool:
        w = self.u * self.z
        return self.u * (1 + w) * self.nu * (1 - w) == self.y_cleared()

    def antisymmetry_holds(self) -> bool:
        """Y(u) + Y(1/(z^2 u)) = 0 as a rational identity."""
        d = max(self.y_num.degree(self.u), self.y_den.degree(self.u))
        num_r = reciprocal_u(self.y_num, d)
        den_r = reciprocal_u(self.y_den, d)
        return self.y_num * den_r + num_r * self.y_den == 0


def reciprocal_u(poly: PolyElement, d: int) -> PolyElement:
    """(z^2 u)^d poly(1/(z^2 u)) for poly of u-degree at most d."""
    terms = {}
    for monom, c in poly.terms():
        eu, ez, *rest = monom
        terms[(d - eu, ez + 2 * (d - eu), *rest)] = c
    return poly.ring.from_dict(terms)


def kernel_build(K: int) -> KernelData:
    if K < 1:
        raise ValueError(f"kernel_build needs K >= 1, got {K}")
    names = ["u", "z"] + [f"p{k}" for k in range(1, K + 1)]
    R, u, z, *p = ring(",".join(names), QQ)
    w = u * z

    gamma = sum((catalan_weight(k) * p[k - 1] * z**k for k in range(1, K + 1)), R.zero)
    inner = R.one
    for k in range(2, K + 1):
        for ell in range(1, k):
            inner -= comb(2 * k - 1, k + ell) * p[k - 1] * z**k * w**ell
    f0 = (1 + w) * inner
    theta_num = sum(
        (p[k - 1] * u ** (K - k) * (1 + w) ** (2 * k) for k in range(1, K + 1)), R.zero
    )
    q = 2 * u**K * inner + (1 + w) * sum(
        (p[k - 1] * u ** (K - k) * (1 + w) ** (2 * k - 2) for k in range(1, K + 1)), R.zero
    )
    y_num = (1 + w) * (1 + gamma) * u ** (K - 1) - z * q
    nu, remainder = y_num.div(1 - w)
    if remainder != 0:
        raise StructuralError(f"Kernel numerator is not divisible by (1 - uz) at K = {K}")
    y_den = u ** (K - 1) * (1 + gamma) * (1 + w)
    kernel = KernelData(K, R, theta_num, f0, gamma, y_num, y_den, nu)
    if kernel.nu_degree() != 2 * (K - 1):
        raise StructuralError(
            f"Nu has u-degree {kernel.nu_degree()}, expected {2 * (K - 1)} at K = {K}"
        )
    logger.debug(f"Built kernel at K = {K}: Nu has {len(nu.terms())} terms")
    return kernel


# ----------------------------------------------------------------------
# Newton polygon
# ----------------------------------------------------------------------


def random_specialization(K: int, seed: int) -> list[Fraction]:
    rng = random.Random(seed)
    values = []
    for _ in range(K):
        numerator = rng.randint(1, 9) * rng.choice([-1, 1])
        values.append(Fraction(numerator, rng.randint(1, 9)))
    return values


def valuations(kernel: KernelData, values: list[Fraction]) -> dict[int, int]:
    """z-adic valuation of each u-coefficient of Nu after p_k := values[k-1]."""
    coeffs: dict[tuple[int, int], Fraction] = {}
    for monom, c in kernel.nu.terms():
        eu, ez, *ep = monom
        value = to_fraction(c)
        for v, e in zip(values, ep):
            value *= v**e
        coeffs[(eu, ez)] = coeffs.get((eu, ez), Fraction(0)) + value
    out: dict[int, int] = {}
    for (eu, ez), c in coeffs.items():
        if c and (eu not in out or ez < out[eu]):
            out[eu] = ez
    return out


def lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    hull: list[tuple[int, int]] = []
    for point in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (point[1] - y1) - (y2 - y1) * (point[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(point)
    return hull


def count_small_zeros(kernel: KernelData, seed: int = 0) -> tuple[int, int]:
    """(small, large) root counts of Nu from its lower Newton polygon.

    A segment of slope -lambda carries roots of valuation lambda; small roots
    have positive valuation.
    """
    vals = valuations(kernel, random_specialization(kernel.K, seed))
    hull = lower_hull(list(vals.items()))
    small = hull[0][0]  # roots at u = 0
    large = 0
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if y2 < y1:
            small += x2 - x1
        else:
            large += x2 - x1
    return small, large
