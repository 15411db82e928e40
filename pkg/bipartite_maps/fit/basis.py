"""
Ansatz columns for the rational closed forms of F_g and L_g.

A column is one BasisTerm

    eta_alpha zeta_beta (1 - eta)^-a (1 + zeta)^-b (1 -+ uz)^-c

expanded as a (z, u, p) series.
"""

import logging
from functools import lru_cache
from typing import Iterator, Literal

from bipartite_maps.greek.field import basis_term_elem, gf_eval
from bipartite_maps.models import BasisTerm
from bipartite_maps.series.partitions import partitions_of
from bipartite_maps.series.series import Series

logger = logging.getLogger(__name__)

Target = Literal["F", "L"]


def _ceil_half(n: int) -> int:
    return -(-n // 2)


def _greek_pairs(size: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    for eta_size in range(size + 1):
        for alpha in partitions_of(eta_size):
            for beta in partitions_of(size - eta_size):
                yield alpha, beta


def _denominators(limit: int) -> Iterator[tuple[int, int]]:
    for total in range(limit + 1):
        for a in range(total + 1):
            yield a, total - a


def column_key(term: BasisTerm) -> tuple:
    """Columns later in this order are the first to be pruned."""
    return (
        term.greek_size(),
        term.c,
        term.a,
        term.b,
        {"+": 0, "-": 1, "": 2}[term.sign],
        term.alpha,
        term.beta,
    )


def exponent_bound(g: int, target: Target, term: BasisTerm) -> int:
    """Largest a + b allowed for the term: ell(alpha) + ell(beta) + 2g - 1 (F) or 2g - 2 (L)."""
    return term.greek_length() + 2 * g - (1 if target == "F" else 2)


def enumerate_basis(g: int, target: Target) -> list[BasisTerm]:
    """Every admissible term, with a + b bounded above rather than fixed."""
    terms: list[BasisTerm] = []
    if target == "F":
        if g < 1:
            raise ValueError(f"Rooted closed forms need g >= 1, got {g}")
        for sign, scale in (("+", 3), ("-", 1)):
            for c in range(1, 6 * g):
                room = scale * g - _ceil_half(1 + c)
                for size in range(room + 1):
                    for alpha, beta in _greek_pairs(size):
                        ell = len(alpha) + len(beta)
                        for a, b in _denominators(ell + 2 * g - 1):
                            terms.append(BasisTerm(alpha, beta, a, b, c, sign))
    elif target == "L":
        if g == 1:
            raise ValueError(
                "L_1 contains ln(1/(1-eta)) and ln(1/(1+zeta)); it has no rational closed form"
            )
        if g < 2:
            raise ValueError(f"Unrooted closed forms need g >= 2, got {g}")
        for size in range(3 * (g - 1) + 1):
            for alpha, beta in _greek_pairs(size):
                ell = len(alpha) + len(beta)
                for a, b in _denominators(ell + 2 * g - 2):
                    terms.append(BasisTerm(alpha, beta, a, b))
    else:
        raise ValueError(f"Unknown target {target!r}")
    terms.sort(key=column_key)
    logger.debug(f"Basis for {target}_{g}: {len(terms)} terms")
    return terms


@lru_cache(maxsize=4096)
def expand_term(term: BasisTerm, N: int) -> Series:
    return gf_eval(basis_term_elem(term), N)
