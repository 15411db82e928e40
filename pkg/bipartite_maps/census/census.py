"""
Brute-force census of bipartite maps as transitive permutation pairs.

One pass over all (sigma_w, sigma_b) in S_n x S_n fills every table; the
pass is cached per n and split across processes by the first image of
sigma_w.
"""

import itertools
import logging
import math
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field

from tqdm import tqdm

from bipartite_maps.census.permutations import (
    Permutation,
    UnionFind,
    compose,
    cycle_count,
    cycles,
    genus_from_counts,
)
from bipartite_maps.errors import CensusGuardError, StructuralError
from bipartite_maps.models import (
    CensusTable,
    MarkedCounts,
    MarkedTotals,
    RootedTable,
)
from bipartite_maps.series.partitions import make_partition

logger = logging.getLogger(__name__)

CENSUS_GUARD = 7


@dataclass
class Tally:
    labelled: Counter = field(default_factory=Counter)
    rooted: Counter = field(default_factory=Counter)
    vertex: Counter = field(default_factory=Counter)
    face: Counter = field(default_factory=Counter)

    def merge(self, other: "Tally") -> None:
        self.labelled.update(other.labelled)
        self.rooted.update(other.rooted)
        self.vertex.update(other.vertex)
        self.face.update(other.face)


_TALLIES: dict[int, Tally] = {}


def _tally_chunk(n: int, first: int) -> Tally:
    """Enumerate all pairs whose sigma_w sends 0 to `first`."""
    perms: list[Permutation] = list(itertools.permutations(range(n)))
    ncycles = {p: cycle_count(p) for p in perms}
    tally = Tally()
    for w in perms:
        if w[0] != first:
            continue
        cw = ncycles[w]
        for b in perms:
            uf = UnionFind(n)
            for i in range(n):
                uf.union(i, w[i])
                uf.union(i, b[i])
            if uf.components != 1:
                continue
            faces = cycles(compose(w, b))
            g = genus_from_counts(n, cw, ncycles[b], len(faces))
            mu = make_partition(len(c) for c in faces)
            tally.labelled[(g, mu)] += 1
            tally.vertex[(g, mu)] += cw + ncycles[b]
            tally.face[(g, mu)] += len(faces)
            root = next(c for c in faces if 0 in c)
            rest = make_partition(len(c) for c in faces if c is not root)
            tally.rooted[(g, len(root), rest)] += 1
    return tally


def default_workers() -> int:
    env = os.environ.get("BIPMAPS_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _check_size(n: int, override: bool) -> None:
    if n < 1:
        raise CensusGuardError(f"Census size must be at least 1, got {n}")
    if n > CENSUS_GUARD and not override:
        raise CensusGuardError(
            f"Census size {n} exceeds the guard {CENSUS_GUARD}; pass override to run it"
        )


def enumerate_pairs(n: int, workers: int | None = None, override: bool = False) -> Tally:
    """Run (or fetch from cache) the single enumeration pass for size n."""
    _check_size(n, override)
    if n in _TALLIES:
        return _TALLIES[n]
    workers = workers or default_workers()
    total = Tally()
    chunks = range(n)
    show = sys.stderr.isatty() and logger.isEnabledFor(logging.INFO)
    logger.info(f"Census n={n}: {math.factorial(n) ** 2} pairs in {n} chunks")
    if workers == 1 or n <= 4:
        for first in tqdm(chunks, desc=f"census n={n}", disable=not show):
            total.merge(_tally_chunk(n, first))
    else:
        with ProcessPoolExecutor(max_workers=min(workers, n)) as pool:
            futures = [pool.submit(_tally_chunk, n, first) for first in chunks]
            for future in tqdm(
                as_completed(futures), total=n, desc=f"census n={n}", disable=not show
            ):
                total.merge(future.result())
    _TALLIES[n] = total
    return total


def census(
    n: int, workers: int | None = None, override: bool = False
) -> tuple[CensusTable, MarkedTotals]:
    tally = enumerate_pairs(n, workers, override)
    table = CensusTable(n, dict(sorted(tally.labelled.items())))
    marked = MarkedTotals(
        n,
        {
            key: MarkedCounts(tally.vertex[key], tally.face[key], n * count)
            for key, count in sorted(tally.labelled.items())
        },
    )
    return table, marked


def rooted_counts(
    n: int, workers: int | None = None, override: bool = False
) -> RootedTable:
    tally = enumerate_pairs(n, workers, override)
    labels = math.factorial(n - 1)
    entries = {}
    for key, count in sorted(tally.rooted.items()):
        q, r = divmod(count, labels)
        if r:
            raise StructuralError(
                f"rooted count {count} at {key} is not divisible by (n-1)! = {labels}"
            )
        entries[key] = q
    return RootedTable(n, entries)


def transitive_pair_count(n: int, workers: int | None = None) -> int:
    return census(n, workers)[0].total()


def disymmetry_defect(table: CensusTable, marked: MarkedTotals, g: int, mu) -> int:
    """(2-2g) l_g(mu) - (vertex + face - edge); zero when Euler's formula holds."""
    counts = marked.get(g, mu)
    return (2 - 2 * g) * table.count(g, mu) - (counts.vertex + counts.face - counts.edge)
