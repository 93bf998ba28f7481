"""Permutations of the edges of the complete graph K_n.

Edges are indexed exactly like the coordinates of a distance vector, so a
vertex permutation acts on both in the same way.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import BadPermutation, ConsistencyError, TooLarge
from .metric import pair_index, pairs

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeSet:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("K_n needs n >= 2")

    @property
    def edges(self) -> list[tuple[int, int]]:
        return pairs(self.n)

    def __len__(self):
        return self.n * (self.n - 1) // 2

    def index(self, i: int, j: int) -> int:
        return pair_index(i, j, self.n)


def adjacent(e: tuple[int, int], f: tuple[int, int]) -> bool:
    """Distinct edges sharing a vertex."""
    return e != f and bool(set(e) & set(f))


@dataclass(frozen=True)
class EdgePermutation:
    """images[e] is the index of the edge that edge e is sent to."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        N = self.n * (self.n - 1) // 2
        if sorted(self.images) != list(range(N)):
            raise BadPermutation(f"{self.images} is not a permutation of the {N} edges of K_{self.n}")

    def __call__(self, e: int) -> int:
        return self.images[e]

    def __matmul__(self, other: "EdgePermutation") -> "EdgePermutation":
        """(self @ other)(e) = self(other(e))."""
        return EdgePermutation(self.n, tuple(self.images[i] for i in other.images))

    def inverse(self) -> "EdgePermutation":
        inv = [0] * len(self.images)
        for e, img in enumerate(self.images):
            inv[img] = e
        return EdgePermutation(self.n, tuple(inv))

    def table(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        E = pairs(self.n)
        return [(E[e], E[img]) for e, img in enumerate(self.images)]

    def permute_coords(self, coords: Sequence[float]) -> tuple[float, ...]:
        """Coordinate action matching apply_perm: out[e] = coords[alpha(e)]."""
        return tuple(coords[img] for img in self.images)


def induced_edge_perm(sigma: Sequence[int], n: int) -> EdgePermutation:
    sigma = tuple(int(s) for s in sigma)
    if n < 2 or sorted(sigma) != list(range(n)):
        raise BadPermutation(f"{sigma} is not a permutation of 0..{n - 1}")
    return EdgePermutation(n, tuple(pair_index(sigma[i], sigma[j], n) for i, j in pairs(n)))


def is_adjacency_preserving(alpha: EdgePermutation) -> bool:
    E = pairs(alpha.n)
    for a, b in itertools.combinations(range(len(E)), 2):
        if adjacent(E[a], E[b]) and not adjacent(E[alpha(a)], E[alpha(b)]):
            return False
    return True


def inducing_vertex_perm(alpha: EdgePermutation) -> tuple[int, ...] | None:
    """Vertex permutation inducing alpha, recovered from the images of vertex stars."""
    n = alpha.n
    E = pairs(n)
    if n == 2:
        return (0, 1)
    sigma = []
    for v in range(n):
        common = set(range(n))
        for i, e in enumerate(E):
            if v in e:
                common &= set(E[alpha(i)])
        if len(common) != 1:
            return None
        sigma.append(common.pop())
    if sorted(sigma) != list(range(n)):
        return None
    if induced_edge_perm(sigma, n) != alpha:
        return None
    return tuple(sigma)


def in_vertex_group(alpha: EdgePermutation) -> bool:
    return inducing_vertex_perm(alpha) is not None


def star_to_triangle_alpha() -> EdgePermutation:
    """The K_4 edge permutation sending each vertex star onto a triangle."""
    table = {
        (0, 1): (1, 2),
        (0, 2): (2, 3),
        (0, 3): (1, 3),
        (1, 2): (0, 2),
        (1, 3): (0, 1),
        (2, 3): (0, 3),
    }
    return EdgePermutation(4, tuple(pair_index(*table[e], 4) for e in pairs(4)))


def line_graph_automorphisms(n: int, stats: dict | None = None) -> list[EdgePermutation]:
    """All adjacency-preserving edge permutations of K_n, by backtracking.

    Edges are assigned images in index order; a candidate image must agree with
    every earlier edge on adjacency.  A bijection sending adjacent pairs to
    adjacent pairs also sends non-adjacent pairs to non-adjacent ones (the two
    sets are finite and of equal size), so both directions may prune.
    """
    if n < 2:
        raise ValueError("K_n needs n >= 2")
    E = pairs(n)
    N = len(E)
    adj = [[adjacent(E[a], E[b]) for b in range(N)] for a in range(N)]
    images = [-1] * N
    used = [False] * N
    found: list[EdgePermutation] = []
    nodes = 0

    def rec(e):
        nonlocal nodes
        nodes += 1
        if e == N:
            found.append(EdgePermutation(n, tuple(images)))
            return
        for img in range(N):
            if used[img]:
                continue
            if all(adj[e][prev] == adj[img][images[prev]] for prev in range(e)):
                images[e] = img
                used[img] = True
                rec(e + 1)
                used[img] = False
                images[e] = -1

    rec(0)
    log.info("line graph automorphism search, n=%d: %d nodes, %d found", n, nodes, len(found))
    if stats is not None:
        stats["nodes"] = nodes
        stats["automorphisms"] = len(found)
    return found


def search_non_induced(n: int, stats: dict | None = None) -> list[EdgePermutation]:
    """Adjacency-preserving edge permutations of K_n not induced by any vertex permutation."""
    if not 3 <= n <= 6:
        raise TooLarge(f"search is limited to 3 <= n <= 6, got {n}")
    return [a for a in line_graph_automorphisms(n, stats) if not in_vertex_group(a)]


@dataclass(frozen=True)
class EdgePairCounts:
    f0: int
    f1: int


def count_edge_pairs(n: int) -> EdgePairCounts:
    """Unordered pairs of distinct edges: non-adjacent (f0) and adjacent (f1)."""
    if n < 2:
        raise ValueError("K_n needs n >= 2")
    f0 = f1 = 0
    for e, f in itertools.combinations(pairs(n), 2):
        if adjacent(e, f):
            f1 += 1
        else:
            f0 += 1
    if f0 != n * (n - 1) * (n - 2) * (n - 3) // 8 or f1 != n * (n - 1) * (n - 2) // 2:
        raise ConsistencyError(f"edge pair counts ({f0}, {f1}) disagree with closed forms at n={n}")
    return EdgePairCounts(f0, f1)


@dataclass(frozen=True)
class NormalizerProbe:
    in_G: bool
    normalizes: bool
    violating_g: tuple[int, ...] | None


def normalizer_probe(alpha: EdgePermutation) -> NormalizerProbe:
    """Whether alpha^-1 g alpha is vertex-induced for every vertex-induced g."""
    n = alpha.n
    if n > 6:
        raise TooLarge(f"normalizer probe is limited to n <= 6 ({math.factorial(n)} conjugations)")
    inv = alpha.inverse()
    for sigma in itertools.permutations(range(n)):
        conj = inv @ induced_edge_perm(sigma, n) @ alpha
        if not in_vertex_group(conj):
            return NormalizerProbe(in_vertex_group(alpha), False, sigma)
    return NormalizerProbe(in_vertex_group(alpha), True, None)
