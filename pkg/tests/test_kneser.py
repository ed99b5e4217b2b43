from itertools import combinations

import numpy as np
import pytest

from models.limits import EngineLimits
from models.set_system import SetSystem, StabilityKind
from solver.families import complete_k_subsets, family_prop2, filter_part, random_family
from solver.kneser import build_kneser, count_disjoint_r_tuples, family_as_hypergraph, has_r_pairwise_disjoint
from utils.errors import CapExceededError, SetSystemError


def naive_disjoint_count(family, r):
    return sum(
        1 for combo in combinations(family.members, r)
        if all(not set(a) & set(b) for i, a in enumerate(combo) for b in combo[i + 1:])
    )


def test_build_kneser_perfect_matchings():
    graph = build_kneser(complete_k_subsets(6, 2), 3)
    assert graph.vertex_count == 15
    assert len(graph.edges) == 15
    assert all(len(e) == 3 for e in graph.edges)
    assert graph.vertex_labels == complete_k_subsets(6, 2).members


def test_build_kneser_petersen(petersen_family):
    graph = build_kneser(petersen_family, 2)
    assert graph.vertex_count == 10
    assert len(graph.edges) == 15
    assert all(d == 3 for d in graph.degrees())


def test_build_kneser_edges_are_lexicographic():
    graph = build_kneser(complete_k_subsets(7, 2), 3)
    assert list(graph.edges) == sorted(graph.edges)


def test_build_kneser_prop2_stable_part_has_no_edges():
    stable = filter_part(family_prop2(2), 2, StabilityKind.STABLE)
    graph = build_kneser(stable, 2)
    assert graph.vertex_count == 3
    assert graph.edges == ()


def test_build_kneser_empty_family():
    graph = build_kneser(SetSystem(5, ()), 3)
    assert graph.vertex_count == 0
    assert graph.edges == ()


def test_build_kneser_rejects_small_r():
    with pytest.raises(SetSystemError):
        build_kneser(complete_k_subsets(4, 2), 1)


def test_build_kneser_edge_cap():
    with pytest.raises(CapExceededError) as info:
        build_kneser(complete_k_subsets(6, 2), 2, EngineLimits(max_edges=10))
    assert info.value.cap == "max_edges"
    assert info.value.limit == 10


def test_has_r_pairwise_disjoint():
    assert not has_r_pairwise_disjoint(filter_part(family_prop2(3), 3, StabilityKind.STABLE), 3)
    assert has_r_pairwise_disjoint(complete_k_subsets(6, 2), 3)
    assert not has_r_pairwise_disjoint(SetSystem(6, ((1, 2), (3, 4))), 3)


def test_count_disjoint_r_tuples():
    assert count_disjoint_r_tuples(complete_k_subsets(6, 2), 3) == 15
    assert count_disjoint_r_tuples(complete_k_subsets(4, 2), 2) == 3
    stable = filter_part(family_prop2(3), 3, StabilityKind.STABLE)
    assert count_disjoint_r_tuples(stable, 3) == 0


def test_count_disjoint_r_tuples_cap():
    with pytest.raises(CapExceededError):
        count_disjoint_r_tuples(complete_k_subsets(8, 2), 2, EngineLimits(max_edges=5))


def test_count_matches_naive_enumeration():
    rng = np.random.default_rng(314)
    for _ in range(100):
        n = int(rng.integers(2, 11))
        count = int(rng.integers(0, 13))
        r = int(rng.integers(2, 5))
        family = random_family(rng, n, count, (1, 3))
        expected = naive_disjoint_count(family, r)
        assert count_disjoint_r_tuples(family, r) == expected
        assert len(build_kneser(family, r).edges) == expected
        assert has_r_pairwise_disjoint(family, r) == (expected > 0)


def test_family_as_hypergraph():
    graph = family_as_hypergraph(family_prop2(2))
    assert graph.vertex_count == 6
    assert graph.ground_labels == (1, 2, 3, 4, 5, 6)
    assert (0, 2) in graph.edges
    assert len(graph.edges) == 9
    assert graph.label_of(2) == 3


def test_kneser_edges_carry_over_to_superfamilies():
    rng = np.random.default_rng(2718)
    for _ in range(50):
        n = int(rng.integers(2, 11))
        family = random_family(rng, n, int(rng.integers(1, 13)), (1, 3))
        r = int(rng.integers(2, 5))
        sub = SetSystem(n, tuple(m for m in family.members if rng.random() < 0.6))
        big = build_kneser(family, r)
        small = build_kneser(sub, r)
        big_edges = {frozenset(big.vertex_labels[v] for v in e) for e in big.edges}
        small_edges = {frozenset(small.vertex_labels[v] for v in e) for e in small.edges}
        assert small_edges <= big_edges
