"""Finite metric spaces stored as condensed distance vectors.

Points are indexed 0..n-1.  The condensed vector lists the upper triangle of
the distance matrix row by row: (d01, d02, ..., d0(n-1), d12, ..., d(n-2)(n-1)).
Every other module shares this ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AsymmetricEntry,
    EmptySpace,
    EmptySubset,
    MixedSpaces,
    NonFiniteValue,
    NonpositiveDistance,
    NonpositiveScale,
    NonzeroDiagonal,
    NotSquare,
    SamePoint,
    TooFewPoints,
    TriangleViolation,
)

TOL = 1e-9


def n_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Position of the unordered pair {i, j} in the condensed vector."""
    if i == j:
        raise ValueError("pair_index needs two distinct points")
    if i > j:
        i, j = j, i
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def pairs(n: int) -> list[tuple[int, int]]:
    """All pairs (i, j), i < j, in condensed order."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def n_from_pairs(count: int) -> int:
    n = int(round((1 + (1 + 8 * count) ** 0.5) / 2))
    if n_pairs(n) != count:
        raise ValueError(f"{count} is not a triangular number n(n-1)/2")
    return n


def condensed_to_matrix(rho: Sequence[float], n: int) -> np.ndarray:
    m = np.zeros((n, n))
    iu = np.triu_indices(n, k=1)
    m[iu] = rho
    m[(iu[1], iu[0])] = rho
    return m


@dataclass(frozen=True)
class FiniteMetricSpace:
    n: int
    rho: tuple[float, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.rho) != n_pairs(self.n):
            raise ValueError(f"expected {n_pairs(self.n)} distances for n={self.n}, got {len(self.rho)}")

    @cached_property
    def matrix(self) -> np.ndarray:
        m = condensed_to_matrix(self.rho, self.n)
        m.setflags(write=False)
        return m

    def d(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        return self.rho[pair_index(i, j, self.n)]

    @property
    def diam(self) -> float:
        return diameter(self)

    def subset(self, indices: Iterable[int]) -> "PointSubset":
        return PointSubset(self, tuple(sorted(set(indices))))

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"FiniteMetricSpace(n={self.n}, rho={self.rho})"


@dataclass(frozen=True)
class PointSubset:
    space: FiniteMetricSpace
    indices: tuple[int, ...]

    def __post_init__(self):
        if not self.indices:
            raise EmptySubset("a point subset must be nonempty")
        for i in self.indices:
            if not 0 <= i < self.space.n:
                raise IndexError(f"point {i} out of range for a {self.space.n}-point space")


def validate(matrix, tol: float = TOL, labels: Sequence[str] | None = None) -> FiniteMetricSpace:
    """Check a square distance grid and return it as a FiniteMetricSpace.

    Raises the first violation found, scanning in row-major order:
    NotSquare, NonFiniteValue, NonzeroDiagonal, AsymmetricEntry,
    NonpositiveDistance, TriangleViolation.
    """
    try:
        m = np.asarray(matrix, dtype=float)
    except (TypeError, ValueError) as exc:
        raise NotSquare(f"not a numeric grid: {exc}") from None
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSquare(f"distance grid must be square, got shape {m.shape}")
    n = m.shape[0]
    if n == 0:
        raise EmptySpace("a metric space needs at least one point")
    if not np.all(np.isfinite(m)):
        i, j = map(int, np.argwhere(~np.isfinite(m))[0])
        raise NonFiniteValue(f"non-finite entry at ({i}, {j})")
    for i in range(n):
        if m[i, i] != 0.0:
            raise NonzeroDiagonal(i, float(m[i, i]))
    asym = np.abs(m - m.T) > tol
    if asym.any():
        i, j = map(int, np.argwhere(np.triu(asym))[0])
        raise AsymmetricEntry(i, j, float(m[i, j]), float(m[j, i]))
    off = ~np.eye(n, dtype=bool)
    bad = off & (m <= 0.0)
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        raise NonpositiveDistance(i, j, float(m[i, j]))
    rho = m[np.triu_indices(n, k=1)]
    u = condensed_to_matrix(rho, n)
    check_triangles(u, tol)
    return FiniteMetricSpace(n, tuple(float(x) for x in rho), tuple(labels) if labels else None)


def check_triangles(u: np.ndarray, tol: float = TOL, exc=TriangleViolation) -> None:
    # excess[i, j, k] = d(i,k) - d(i,j) - d(j,k)
    excess = u[:, None, :] - u[:, :, None] - u[None, :, :]
    viol = excess > tol
    if viol.any():
        i, j, k = map(int, np.argwhere(viol)[0])
        raise exc(i, j, k, float(excess[i, j, k]))


def from_condensed(rho: Sequence[float], n: int | None = None, tol: float = TOL,
                   labels: Sequence[str] | None = None) -> FiniteMetricSpace:
    rho = [float(x) for x in rho]
    if n is None:
        n = n_from_pairs(len(rho))
    elif len(rho) != n_pairs(n):
        raise ValueError(f"expected {n_pairs(n)} distances for n={n}, got {len(rho)}")
    return validate(condensed_to_matrix(rho, n), tol=tol, labels=labels)


def single_point() -> FiniteMetricSpace:
    return FiniteMetricSpace(1, ())


def diameter(X: FiniteMetricSpace) -> float:
    return max(X.rho) if X.rho else 0.0


def scale(X: FiniteMetricSpace, lam: float) -> FiniteMetricSpace:
    if not lam > 0:
        raise NonpositiveScale(f"scale factor must be positive, got {lam!r}")
    return FiniteMetricSpace(X.n, tuple(lam * x for x in X.rho), X.labels)


def simplex(n: int, t: float = 1.0) -> FiniteMetricSpace:
    """n points pairwise at distance t.  For n = 1 the result ignores t."""
    if n < 1:
        raise EmptySpace("simplex needs n >= 1")
    if not t > 0:
        raise NonpositiveScale(f"simplex edge length must be positive, got {t!r}")
    return FiniteMetricSpace(n, (float(t),) * n_pairs(n))


def smallest_two(X: FiniteMetricSpace) -> tuple[float, float]:
    """First and second smallest entries of the distance multiset."""
    if len(X.rho) < 2:
        raise TooFewPoints(f"need at least two distances, space has {len(X.rho)}")
    a, b = sorted(X.rho)[:2]
    return a, b


def restrict(X: FiniteMetricSpace, S: PointSubset | Iterable[int]) -> FiniteMetricSpace:
    idx = S.indices if isinstance(S, PointSubset) else tuple(S)
    if not idx:
        raise EmptySubset("cannot restrict to an empty subset")
    k = len(idx)
    rho = tuple(X.d(idx[a], idx[b]) for a in range(k) for b in range(a + 1, k))
    labels = tuple(X.labels[i] for i in idx) if X.labels else None
    return FiniteMetricSpace(k, rho, labels)


def _block(A: PointSubset, B: PointSubset) -> np.ndarray:
    if A.space != B.space:
        raise MixedSpaces("subsets belong to different spaces")
    return A.space.matrix[np.ix_(A.indices, B.indices)]


def set_distance_inf(A: PointSubset, B: PointSubset) -> float:
    return float(_block(A, B).min())


def set_distance_sup(A: PointSubset, B: PointSubset) -> float:
    return float(_block(A, B).max())


def hausdorff(A: PointSubset, B: PointSubset) -> float:
    m = _block(A, B)
    return float(max(m.min(axis=1).max(), m.min(axis=0).max()))


def mid_set(X: FiniteMetricSpace, p: int, q: int, tol: float = TOL) -> PointSubset | None:
    """Points equidistant from p and q, or None when there are none."""
    if p == q:
        raise SamePoint("mid_set needs two distinct points")
    m = X.matrix
    idx = [i for i in range(X.n) if abs(m[i, p] - m[i, q]) <= tol]
    return PointSubset(X, tuple(idx)) if idx else None


def greedy_eps_net(X: FiniteMetricSpace, eps: float) -> PointSubset:
    """Farthest-point greedy eps-net seeded at point 0."""
    m = X.matrix
    chosen = [0]
    reach = m[0].copy()
    while True:
        far = int(np.argmax(reach))
        if reach[far] <= eps:
            return PointSubset(X, tuple(sorted(chosen)))
        chosen.append(far)
        reach = np.minimum(reach, m[far])


def random_space(n: int, rng: np.random.Generator, low: float = 0.0, high: float = 1.0,
                 max_tries: int = 100_000) -> FiniteMetricSpace:
    """Uniform i.i.d. distances on [low, high), rejected until all triangles hold."""
    if n < 1:
        raise EmptySpace("random_space needs n >= 1")
    N = n_pairs(n)
    for _ in range(max_tries):
        rho = rng.uniform(low, high, size=N)
        if np.any(rho <= 0):
            continue
        u = condensed_to_matrix(rho, n)
        excess = u[:, None, :] - u[:, :, None] - u[None, :, :]
        if not (excess > 0).any():
            return FiniteMetricSpace(n, tuple(float(x) for x in rho))
    raise RuntimeError(f"no valid {n}-point space after {max_tries} draws on [{low}, {high})")
