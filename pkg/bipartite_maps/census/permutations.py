"""
Permutations of {0, ..., n-1} as tuples: perm[i] is the image of i.

Label 0 plays the role of the first edge label; products compose right to
left, (a * b)(i) = a(b(i)).
"""

from bipartite_maps.errors import StructuralError

Permutation = tuple[int, ...]


def compose(a: Permutation, b: Permutation) -> Permutation:
    return tuple(a[i] for i in b)


def cycles(perm: Permutation) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = perm[i]
        out.append(cycle)
    return out


def cycle_count(perm: Permutation) -> int:
    return len(cycles(perm))


def from_cycles(n: int, cycle_list: list[list[int]]) -> Permutation:
    """Build a permutation from cycles given with 1-based labels."""
    perm = list(range(n))
    for cycle in cycle_list:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            perm[a - 1] = b - 1
    return tuple(perm)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.components = n

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[ri] = rj
            self.components -= 1


def is_transitive(sigma_w: Permutation, sigma_b: Permutation) -> bool:
    """Whether <sigma_w, sigma_b> acts transitively, by merging orbits."""
    uf = UnionFind(len(sigma_w))
    for i in range(len(sigma_w)):
        uf.union(i, sigma_w[i])
        uf.union(i, sigma_b[i])
    return uf.components == 1


def genus_from_counts(n: int, white: int, black: int, faces: int) -> int:
    twice = n + 2 - white - black - faces
    if twice % 2:
        raise StructuralError(
            f"Euler formula gave odd 2g = {twice} for n={n}, cycles=({white}, {black}, {faces})"
        )
    return twice // 2


def genus_of(sigma_w: Permutation, sigma_b: Permutation) -> int:
    """g = (n + 2 - l(sigma_w) - l(sigma_b) - l(sigma_w sigma_b)) / 2."""
    if len(sigma_w) != len(sigma_b):
        raise ValueError("Permutations act on ground sets of different sizes")
    return genus_from_counts(
        len(sigma_w),
        cycle_count(sigma_w),
        cycle_count(sigma_b),
        cycle_count(compose(sigma_w, sigma_b)),
    )
