import pytest

from bipartite_maps.census.census import (
    CENSUS_GUARD,
    census,
    disymmetry_defect,
    rooted_counts,
    transitive_pair_count,
)
from bipartite_maps.census.permutations import (
    compose,
    cycles,
    from_cycles,
    genus_of,
    is_transitive,
)
from bipartite_maps.errors import CensusGuardError


def test_permutation_basics():
    a = from_cycles(3, [[1, 2, 3]])
    assert a == (1, 2, 0)
    assert compose(a, a) == from_cycles(3, [[1, 3, 2]])
    assert cycles(compose(a, a)) == [[0, 2, 1]]
    identity = (0, 1, 2)
    assert not is_transitive(identity, identity)
    assert is_transitive(a, identity)


def test_genus_of_one_face_torus():
    a = from_cycles(3, [[1, 2, 3]])
    assert genus_of(a, a) == 1
    assert genus_of(a, compose(a, a)) == 0


def test_transitive_pair_counts():
    assert [transitive_pair_count(n, workers=1) for n in range(1, 5)] == [1, 3, 26, 426]


def test_small_tables():
    table, marked = census(2, workers=1)
    assert table.entries == {(0, (2,)): 2, (0, (1, 1)): 1}
    assert marked.get(0, (2,)).vertex == 6
    assert marked.get(0, (1, 1)).face == 2


def test_first_torus_map():
    table, _ = census(3, workers=1)
    assert table.count(1, (3,)) == 2
    assert rooted_counts(3, workers=1).count(1, 3, ()) == 1


def test_genus_range(census_tables):
    for n, (table, _) in census_tables.items():
        assert all(g <= (n - 1) // 2 for g, _ in table.entries)
        assert all(sum(mu) == n for _, mu in table.entries)


def test_disymmetry_holds_everywhere(census_tables):
    for table, marked in census_tables.values():
        for g, mu in table.entries:
            assert disymmetry_defect(table, marked, g, mu) == 0


def test_genus_one_disymmetry_has_zero_left_side(census_tables):
    table, marked = census_tables[5]
    for (g, mu), counts in marked.entries.items():
        if g == 1:
            assert counts.vertex + counts.face == counts.edge


def test_rooted_counts_are_integral(engine):
    rooted = engine.rooted_census(5)
    assert all(count > 0 for count in rooted.entries.values())


def test_guard_refuses_large_census():
    with pytest.raises(CensusGuardError):
        census(CENSUS_GUARD + 1, workers=1)
    with pytest.raises(CensusGuardError):
        census(0, workers=1)
