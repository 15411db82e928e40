"""
Integer partitions stored as weakly decreasing tuples of positive ints.
"""

from bisect import bisect_left, bisect_right
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from operator import neg
from typing import Callable, Iterable, Iterator

Partition = tuple[int, ...]

EMPTY: Partition = ()


def make_partition(parts: Iterable[int]) -> Partition:
    parts = tuple(sorted(parts, reverse=True))
    if parts and parts[-1] <= 0:
        raise ValueError(f"Partition parts must be positive, got {parts}")
    return parts


def weight(mu: Partition) -> int:
    return sum(mu)


def length(mu: Partition) -> int:
    return len(mu)


def multiplicity(mu: Partition, k: int) -> int:
    """Number of parts equal to k, by bisection on the descending tuple."""
    return bisect_right(mu, -k, key=neg) - bisect_left(mu, -k, key=neg)


def multiplicities(mu: Partition) -> dict[int, int]:
    return dict(Counter(mu))


@lru_cache(maxsize=200_000)
def merge(mu: Partition, nu: Partition) -> Partition:
    if not mu:
        return nu
    if not nu:
        return mu
    return tuple(sorted(mu + nu, reverse=True))


def remove_part(mu: Partition, k: int) -> Partition:
    """Remove one copy of k from mu; raises KeyError if k is not a part."""
    items = list(mu)
    try:
        items.remove(k)
    except ValueError:
        raise KeyError(f"{k} is not a part of {mu}") from None
    return tuple(items)


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n in reverse-lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield EMPTY
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class PartSupport:
    """Keeps monomials p_mu with at most `extra` parts outside `parts`.

    Monomials failing the test form an ideal, so truncating to the
    complement commutes with products, Omega and Gamma (the latter after
    lowering `extra` by one).
    """

    parts: frozenset[int]
    extra: int = 0

    def __call__(self, mu: Partition) -> bool:
        outside = 0
        for p in mu:
            if p not in self.parts:
                outside += 1
                if outside > self.extra:
                    return False
        return True

    def widen(self, by: int) -> "PartSupport":
        return PartSupport(self.parts, self.extra + by)


def max_part_at_most(k: int) -> Callable[[Partition], bool]:
    def predicate(mu: Partition) -> bool:
        return not mu or mu[0] <= k

    return predicate
