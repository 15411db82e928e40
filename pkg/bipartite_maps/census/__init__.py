from .census import (
    CENSUS_GUARD,
    census,
    disymmetry_defect,
    enumerate_pairs,
    rooted_counts,
    transitive_pair_count,
)
from .permutations import compose, cycles, from_cycles, genus_of, is_transitive

__all__ = [
    "CENSUS_GUARD",
    "census",
    "compose",
    "cycles",
    "disymmetry_defect",
    "enumerate_pairs",
    "from_cycles",
    "genus_of",
    "is_transitive",
    "rooted_counts",
    "transitive_pair_count",
]
