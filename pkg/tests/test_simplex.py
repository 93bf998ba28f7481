import itertools

import numpy as np
import pytest

from conftest import brute_distortion, line_space, seeded_spaces
from ghlab.errors import ConsistencyError, HypothesisUnmet, TooManySimplexPoints
from ghlab.metric import diameter, from_condensed, simplex, single_point
from ghlab.simplex import (
    SimplexSpec,
    bn_member,
    check_case_overlap,
    closed_form_cases,
    dis_partition_simplex,
    dn_equals_diameter,
    gh_simplex_simplex,
    gh_to_simplex_closed,
    gh_to_simplex_enum,
    spider_space,
    subsimplex_bound_check,
)
from ghlab.solver import Partition, enumerate_partitions, gh_exact, min_diameter_partition


def test_spec_guards():
    with pytest.raises(ValueError):
        SimplexSpec(0, 1)
    with pytest.raises(ValueError):
        SimplexSpec(2, 0)


def test_dis_partition_examples():
    X = line_space(0, 1, 10)
    assert dis_partition_simplex(X, 5, Partition(((0, 1), (2,)))) == 5
    assert dis_partition_simplex(X, 5, Partition(((0, 1, 2),))) == diameter(X)
    S = simplex(4, 1.5)
    singles = Partition(tuple((i,) for i in range(4)))
    assert dis_partition_simplex(S, 2.5, singles) == 1.0


def test_dis_partition_equals_distortion():
    for X in seeded_spaces(30, 12, [2, 3, 4, 5]):
        for k in range(1, X.n + 1):
            T = simplex(k, 0.7)
            for D in enumerate_partitions(X.n, k):
                pairs = [(x, i) for i, b in enumerate(D.blocks) for x in b]
                want = brute_distortion(X, T, pairs) if k > 1 else diameter(X)
                assert dis_partition_simplex(X, 0.7, D) == pytest.approx(want, abs=1e-15)


def test_enum_examples():
    assert gh_to_simplex_enum(SimplexSpec(2, 5), line_space(0, 1, 10)) == 2.5
    assert gh_to_simplex_enum(SimplexSpec(3, 2), simplex(3, 1.25)) == 0.375
    with pytest.raises(TooManySimplexPoints):
        gh_to_simplex_enum(SimplexSpec(3, 1), simplex(2, 5))


def test_closed_examples():
    assert gh_to_simplex_closed(SimplexSpec(3, 1), simplex(2, 5), return_case=True) == (2.0, "m<n")
    assert gh_to_simplex_closed(SimplexSpec(2, 5), line_space(0, 1, 10), return_case=True) == (2.5, "m=n+1")
    value, case = gh_to_simplex_closed(SimplexSpec(4, 2), simplex(4, 3), return_case=True)
    assert (value, case) == (0.5, "m=n")


def test_closed_falls_back_to_enum():
    X = line_space(0, 1, 3, 4, 9)  # m = 5, n = 2, diam 9 < 2t
    spec = SimplexSpec(2, 5)
    assert closed_form_cases(spec, X) == {}
    assert gh_to_simplex_closed(spec, X, return_case=True) == (gh_to_simplex_enum(spec, X), "enum")


def test_closed_enum_solver_agree():
    for X in seeded_spaces(31, 25, [2, 3, 4, 5, 6]):
        diam = diameter(X)
        for n in range(1, X.n + 1):
            for t in np.linspace(0.2 * diam, 2 * diam, 10):
                spec = SimplexSpec(n, float(t))
                solver = gh_exact(spec.space(), X)
                assert gh_to_simplex_closed(spec, X) == pytest.approx(solver, abs=1e-9)
                assert gh_to_simplex_enum(spec, X) == pytest.approx(solver, abs=1e-9)
                check_case_overlap(spec, X)


def test_case_overlap_detects_disagreement(monkeypatch):
    import ghlab.simplex as mod
    monkeypatch.setattr(mod, "closed_form_cases", lambda spec, X: {"m=n": 1.0, "d_n": 1.5})
    with pytest.raises(ConsistencyError):
        mod.check_case_overlap(SimplexSpec(2, 1), simplex(2))


@pytest.mark.parametrize("args, want", [
    ((2, 5, 3, 5), 0.5),
    ((1, 3, 1, 4), 0.5),
    ((1, 3, 1, 3), 0.0),
    ((1, 1, 4, 3), 2.0),
    ((2, 4, 7, 1), 1.0),
])
def test_simplex_simplex_examples(args, want):
    assert gh_simplex_simplex(*args) == want


def test_subsimplex_bound():
    r = subsimplex_bound_check(simplex(4), simplex(3), 1, 4)
    assert r.tight and r.value == 0.5
    r = subsimplex_bound_check(simplex(3), simplex(2), 1, 3)
    assert r.tight and r.value == 0.5
    # three points pairwise 1 plus a far point at distance 3
    far = from_condensed([1, 1, 3, 1, 3, 3])
    r = subsimplex_bound_check(far, simplex(2), 1, 3)
    assert not r.tight and r.value >= 0.5
    with pytest.raises(HypothesisUnmet):
        subsimplex_bound_check(simplex(3), simplex(3), 1, 3)
    with pytest.raises(HypothesisUnmet):
        subsimplex_bound_check(from_condensed([3, 4, 5]), simplex(2), 1, 3)


def test_bn_member_simplex_grid():
    for t in (0.5, 1.0):
        for n in (2, 3):
            for m in range(n + 1, 6):
                for s in (2 * t, 3 * t):
                    assert bn_member(simplex(m, s), n, t)
    assert not bn_member(simplex(5, 1.5), 2, 1)


def test_bn_member_smaller_simplex_is_out():
    assert not bn_member(simplex(2, 4), 3, 1)


def test_spider_space():
    for m in (2, 3, 4):
        B = spider_space(m, 2.0)
        assert B.n == 2 * m and diameter(B) == 2.0
        for n in range(1, m):
            assert min_diameter_partition(B, n)[0] == 2.0
            assert dn_equals_diameter(B, n)
        for n in range(2, m):
            assert bn_member(B, n, 1.0)


def two_distance_spaces(seed, count):
    """Random spaces with distances in {1, 2}; any such table is a metric."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        m = int(rng.integers(3, 7))
        yield from_condensed(rng.choice([1.0, 2.0], size=m * (m - 1) // 2, p=[0.3, 0.7]), m)


def test_sampled_members_satisfy_structure():
    hits = misses = 0
    for B in two_distance_spaces(32, 80):
        for n in (2, 3):
            for t in (0.5, 0.8, 1.0):
                if bn_member(B, n, t):
                    hits += 1
                    assert B.n > n
                    assert dn_equals_diameter(B, n)
                else:
                    misses += 1
    assert hits > 20 and misses > 20


def test_members_are_at_half_diameter_from_small_diameter_t_spaces():
    A = from_condensed([1, 1, 0.5])
    for m in (3, 4):
        B = spider_space(m, 2.0)
        for n in range(A.n, m):
            if bn_member(B, n, 1.0):
                assert gh_exact(A, B) == pytest.approx(diameter(B) / 2, abs=1e-12)
