import itertools

import numpy as np
import pytest

from ghlab.configspace import DistVector, apply_perm, compose
from ghlab.edges import (
    EdgePermutation,
    EdgeSet,
    adjacent,
    count_edge_pairs,
    in_vertex_group,
    induced_edge_perm,
    inducing_vertex_perm,
    is_adjacency_preserving,
    line_graph_automorphisms,
    normalizer_probe,
    star_to_triangle_alpha,
    search_non_induced,
)
from ghlab.errors import BadPermutation, TooLarge
from ghlab.metric import pairs


def test_edge_set_order_matches_condensed():
    E = EdgeSet(4)
    assert E.edges == pairs(4) and len(E) == 6
    assert E.index(3, 1) == 4


def test_bad_edge_permutation():
    with pytest.raises(BadPermutation):
        EdgePermutation(3, (0, 0, 1))
    with pytest.raises(BadPermutation):
        induced_edge_perm((0, 0, 1), 3)


def test_induced_examples():
    assert induced_edge_perm((0, 1, 2), 3).images == (0, 1, 2)
    # swap vertices 0 and 1: {0,1} fixed, {0,2} <-> {1,2}
    assert induced_edge_perm((1, 0, 2), 3).table() == [((0, 1), (0, 1)), ((0, 2), (1, 2)), ((1, 2), (0, 2))]


@pytest.mark.parametrize("n", [3, 4])
def test_induced_is_injective_homomorphism(n):
    seen = set()
    for s in itertools.permutations(range(n)):
        a = induced_edge_perm(s, n)
        seen.add(a)
        for t in itertools.permutations(range(n)):
            assert induced_edge_perm(compose(s, t), n) == a @ induced_edge_perm(t, n)
    assert len(seen) == len(list(itertools.permutations(range(n))))


def test_induced_matches_apply_perm():
    for n in (2, 3, 4):
        rho = DistVector(n, tuple(float(v) for v in range(1, n * (n - 1) // 2 + 1)))
        for s in itertools.permutations(range(n)):
            assert induced_edge_perm(s, n).permute_coords(rho.coords) == apply_perm(rho, s).coords


def test_adjacency_preserving_examples():
    for s in itertools.permutations(range(4)):
        assert is_adjacency_preserving(induced_edge_perm(s, 4))
    assert is_adjacency_preserving(star_to_triangle_alpha())
    # swapping two opposite edges keeps adjacency: each touches the other four
    opposite = EdgePermutation(4, (5, 1, 2, 3, 4, 0))
    assert is_adjacency_preserving(opposite) and not in_vertex_group(opposite)
    # swapping {0,1} with {0,2} sends the disjoint pair {0,1},{2,3} to {0,2},{2,3}
    assert not is_adjacency_preserving(EdgePermutation(4, (1, 0, 2, 3, 4, 5)))


def test_round_trip():
    for n in range(2, 6):
        for s in itertools.permutations(range(n)):
            assert inducing_vertex_perm(induced_edge_perm(s, n)) == (s if n > 2 else (0, 1))


def test_star_to_triangle_table():
    table = dict(star_to_triangle_alpha().table())
    assert table == {(0, 1): (1, 2), (0, 2): (2, 3), (0, 3): (1, 3),
                     (1, 2): (0, 2), (1, 3): (0, 1), (2, 3): (0, 3)}
    assert inducing_vertex_perm(star_to_triangle_alpha()) is None
    star = [table[e] for e in [(0, 1), (0, 2), (0, 3)]]
    assert sorted(star) == [(1, 2), (1, 3), (2, 3)]  # a triangle on 1, 2, 3


def test_search_small():
    stats = {}
    assert search_non_induced(3, stats) == []
    assert stats["automorphisms"] == 6
    found = search_non_induced(4)
    assert star_to_triangle_alpha() in found and len(found) == 24
    assert search_non_induced(5) == []
    with pytest.raises(TooLarge):
        search_non_induced(7)


def test_line_graph_automorphisms_brute_n4():
    E = pairs(4)
    brute = []
    for imgs in itertools.permutations(range(6)):
        if all(adjacent(E[a], E[b]) == adjacent(E[imgs[a]], E[imgs[b]]) for a in range(6) for b in range(6)):
            brute.append(EdgePermutation(4, imgs))
    assert set(brute) == set(line_graph_automorphisms(4))


@pytest.mark.parametrize("n, f0, f1", [(2, 0, 0), (3, 0, 3), (4, 3, 12), (8, 210, 168)])
def test_count_edge_pairs(n, f0, f1):
    c = count_edge_pairs(n)
    assert (c.f0, c.f1) == (f0, f1)


def test_count_ratio():
    for n in range(3, 13):
        c = count_edge_pairs(n)
        assert 4 * c.f0 == (n - 3) * c.f1


def test_normalizer():
    assert normalizer_probe(induced_edge_perm((1, 2, 0, 3), 4)).normalizes
    p = normalizer_probe(star_to_triangle_alpha())
    assert not p.in_G and p.normalizes and p.violating_g is None
    for a in line_graph_automorphisms(5):
        p = normalizer_probe(a)
        assert p.in_G and p.normalizes
    with pytest.raises(TooLarge):
        normalizer_probe(induced_edge_perm(tuple(range(7)), 7))


def test_in_vertex_group_random_perms_n5():
    rng = np.random.default_rng(50)
    for _ in range(200):
        a = EdgePermutation(5, tuple(rng.permutation(10)))
        assert in_vertex_group(a) == is_adjacency_preserving(a)
