"""Distance vectors of n-point spaces and the relabeling action of S_n on them.

The distance between vectors is half the largest coordinate difference.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BadPermutation,
    CardinalityMismatch,
    DimensionMismatch,
    NonpositiveCoordinate,
    NotInCone,
    TooLarge,
)
from .metric import TOL, FiniteMetricSpace, condensed_to_matrix, n_from_pairs, pair_index, pairs
from .solver import gh_exact

MAX_GROUP_N = 8


@dataclass(frozen=True)
class DistVector:
    n: int
    coords: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))
        if len(self.coords) != self.n * (self.n - 1) // 2:
            raise DimensionMismatch(f"need {self.n * (self.n - 1) // 2} coordinates for n={self.n}")

    @classmethod
    def of(cls, coords: Sequence[float]) -> "DistVector":
        return cls(n_from_pairs(len(coords)), tuple(coords))

    def array(self) -> np.ndarray:
        return np.asarray(self.coords)


@dataclass(frozen=True)
class ClassificationReport:
    regular: bool
    degenerate: bool
    generic: bool
    stabilizer: list = field(default_factory=list)
    degenerate_triples: list = field(default_factory=list)


def to_rho(X: FiniteMetricSpace) -> DistVector:
    return DistVector(X.n, X.rho)


def check_cone(rho: DistVector, tol: float = TOL) -> None:
    for (i, j), c in zip(pairs(rho.n), rho.coords):
        if c <= 0:
            raise NonpositiveCoordinate(i, j, c)
    u = condensed_to_matrix(rho.coords, rho.n)
    excess = u[:, None, :] - u[:, :, None] - u[None, :, :]
    viol = excess > tol
    if viol.any():
        i, j, k = map(int, np.argwhere(viol)[0])
        raise NotInCone(i, j, k, float(excess[i, j, k]))


def in_cone(rho: DistVector, tol: float = TOL) -> bool:
    try:
        check_cone(rho, tol)
    except (NotInCone, NonpositiveCoordinate):
        return False
    return True


def from_rho(rho: DistVector, tol: float = TOL) -> FiniteMetricSpace:
    check_cone(rho, tol)
    return FiniteMetricSpace(rho.n, rho.coords)


def linf_distance(r1: DistVector, r2: DistVector) -> float:
    if r1.n != r2.n:
        raise DimensionMismatch(f"vectors for n={r1.n} and n={r2.n}")
    if not r1.coords:
        return 0.0
    return float(np.abs(r1.array() - r2.array()).max()) / 2


def _check_perm(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(n)):
        raise BadPermutation(f"{sigma} is not a permutation of 0..{n - 1}")
    return sigma


def perm_index_map(sigma: Sequence[int], n: int) -> np.ndarray:
    """src[e] = index of the edge {sigma(i), sigma(j)} for the e-th edge {i, j}."""
    return np.array([pair_index(sigma[i], sigma[j], n) for i, j in pairs(n)], dtype=int)


def apply_perm(rho: DistVector, sigma: Sequence[int]) -> DistVector:
    """Relabel points: the result at edge {i, j} is rho at {sigma(i), sigma(j)}.

    This is a right action: apply_perm(apply_perm(r, s), t) == apply_perm(r, s o t).
    """
    sigma = _check_perm(sigma, rho.n)
    if rho.n < 2:
        return rho
    return DistVector(rho.n, tuple(rho.array()[perm_index_map(sigma, rho.n)]))


def compose(s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    """(s o t)(i) = s(t(i))."""
    return tuple(s[t[i]] for i in range(len(t)))


def _group_guard(n: int) -> None:
    if n > MAX_GROUP_N:
        raise TooLarge(f"S_{n} has {math.factorial(n)} elements; limit is n <= {MAX_GROUP_N}")


def _all_images(rho: DistVector) -> tuple[list[tuple[int, ...]], np.ndarray]:
    _group_guard(rho.n)
    perms = list(itertools.permutations(range(rho.n)))
    if rho.n < 2:
        return perms, np.zeros((len(perms), 0))
    r = rho.array()
    return perms, np.stack([r[perm_index_map(s, rho.n)] for s in perms])


def orbit(rho: DistVector, tol: float = TOL) -> list[DistVector]:
    """Distinct images of rho under S_n (deduplicated within tol), in first-seen order."""
    _, images = _all_images(rho)
    reps: list[np.ndarray] = []
    for img in images:
        if not any(np.abs(img - r).max(initial=0.0) <= tol for r in reps):
            reps.append(img)
    return [DistVector(rho.n, tuple(r)) for r in reps]


def stabilizer(rho: DistVector, tol: float = TOL) -> list[tuple[int, ...]]:
    perms, images = _all_images(rho)
    r = rho.array()
    return [s for s, img in zip(perms, images) if np.abs(img - r).max(initial=0.0) <= tol]


def degenerate_triples(rho: DistVector, tol: float = TOL) -> list[tuple[int, int, int]]:
    """Triples (i, j, k), i < k, j the middle point, with d(i,j) + d(j,k) = d(i,k) within tol."""
    u = condensed_to_matrix(rho.coords, rho.n)
    out = []
    for i, k in itertools.combinations(range(rho.n), 2):
        for j in range(rho.n):
            if j not in (i, k) and abs(u[i, j] + u[j, k] - u[i, k]) <= tol:
                out.append((i, j, k))
    return out


def classify(rho: DistVector, tol: float = TOL) -> ClassificationReport:
    check_cone(rho, tol)
    stab = stabilizer(rho, tol)
    triples = degenerate_triples(rho, tol)
    regular = len(stab) == 1
    degenerate = bool(triples)
    return ClassificationReport(regular, degenerate, regular and not degenerate, stab, triples)


@dataclass(frozen=True)
class HalfSpace:
    """coef . x >= 0 over the condensed coordinates."""

    triple: tuple[int, int, int]
    coef: tuple[int, ...]

    def holds(self, x: Sequence[float], tol: float = TOL) -> bool:
        return float(np.dot(self.coef, x)) >= -tol


def degeneracy_cone(rho: DistVector, tol: float = TOL) -> list[HalfSpace]:
    """Halfspaces x_ij + x_jk - x_ik >= 0 for each tight triangle of rho.

    An empty list stands for the whole space.
    """
    check_cone(rho, tol)
    out = []
    N = len(rho.coords)
    for i, j, k in degenerate_triples(rho, tol):
        coef = [0] * N
        coef[pair_index(i, j, rho.n)] += 1
        coef[pair_index(j, k, rho.n)] += 1
        coef[pair_index(i, k, rho.n)] -= 1
        out.append(HalfSpace((i, j, k), tuple(coef)))
    return out


def quotient_distance(r1: DistVector, r2: DistVector, return_perm: bool = False):
    """Orbit distance: least linf_distance from r1 to a relabeling of r2.

    Ties go to the lexicographically first permutation.
    """
    if r1.n != r2.n:
        raise DimensionMismatch(f"vectors for n={r1.n} and n={r2.n}")
    perms, images = _all_images(r2)
    if r1.n < 2:
        return (0.0, perms[0]) if return_perm else 0.0
    vals = np.abs(images - r1.array()[None]).max(axis=1) / 2
    i = int(np.argmin(vals))
    return (float(vals[i]), perms[i]) if return_perm else float(vals[i])


@dataclass(frozen=True)
class LocalIsometry:
    quotient: float
    exact: float
    agree: bool


def local_isometry_check(Y: FiniteMetricSpace, Z: FiniteMetricSpace, tol: float = TOL) -> LocalIsometry:
    """Compare the orbit distance of the distance vectors with the exact distance."""
    if Y.n != Z.n:
        raise CardinalityMismatch(f"spaces of sizes {Y.n} and {Z.n}")
    if Y.n > 6:
        raise TooLarge("local isometry check is limited to 6 points")
    q = quotient_distance(to_rho(Y), to_rho(Z))
    e = gh_exact(Y, Z)
    return LocalIsometry(q, e, abs(q - e) <= tol)


def min_triangle_slack(rho: DistVector) -> float:
    """Smallest d(i,j) + d(j,k) - d(i,k) over distinct triples; inf below 3 points."""
    u = condensed_to_matrix(rho.coords, rho.n)
    best = math.inf
    for i, k in itertools.combinations(range(rho.n), 2):
        for j in range(rho.n):
            if j not in (i, k):
                best = min(best, u[i, j] + u[j, k] - u[i, k])
    return best


def orbit_separation(rho: DistVector) -> float:
    """Smallest largest-coordinate gap between rho and an image of it not equal to rho."""
    _, images = _all_images(rho)
    gaps = np.abs(images - rho.array()[None]).max(axis=1)
    gaps = gaps[gaps > 0]
    return float(gaps.min()) if gaps.size else math.inf


def perturbation_margin(rho: DistVector) -> float:
    """Radius used for local-identity experiments: 1/4 of the slack and half-separation."""
    return min(min_triangle_slack(rho), orbit_separation(rho) / 2) / 4
