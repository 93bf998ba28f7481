"""Distances from finite spaces to simplexes tΔn (n points pairwise at distance t)."""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, HypothesisUnmet, NonpositiveScale, TooManySimplexPoints
from .metric import TOL, FiniteMetricSpace, diameter, simplex
from .solver import (
    Partition,
    enumerate_partitions,
    gh_exact,
    min_diameter_partition,
    partition_alpha,
    partition_beta,
    partition_diameter,
)

# dispatch order for the closed form, most specific guard first
CASES = ("m<n", "m=n", "m=n+1", "d_n")


@dataclass(frozen=True)
class SimplexSpec:
    n: int
    t: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"simplex needs n >= 1, got {self.n}")
        if not self.t > 0:
            raise NonpositiveScale(f"simplex edge length must be positive, got {self.t!r}")

    def space(self) -> FiniteMetricSpace:
        return simplex(self.n, self.t)


def dis_partition_simplex(X: FiniteMetricSpace, t: float, D: Partition) -> float:
    """Distortion of the correspondence sending vertex i of tΔk onto block i of D."""
    return max(partition_diameter(X, D), t - partition_alpha(X, D), partition_beta(X, D) - t)


@functools.lru_cache(maxsize=256)
def _partition_profile(X: FiniteMetricSpace, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Block diameter, alpha and beta of every k-block partition of X, as arrays."""
    labels = []
    for D in enumerate_partitions(X.n, k):
        lab = [0] * X.n
        for i, b in enumerate(D.blocks):
            for x in b:
                lab[x] = i
        labels.append(lab)
    L = np.array(labels)
    same = L[:, :, None] == L[:, None, :]
    m = X.matrix[None]
    diam = np.where(same, m, 0.0).max(axis=(1, 2))
    alpha = np.where(same, np.inf, m).min(axis=(1, 2))
    beta = np.where(same, 0.0, m).max(axis=(1, 2))
    return diam, alpha, beta


def gh_to_simplex_enum(spec: SimplexSpec, X: FiniteMetricSpace) -> float:
    if spec.n > X.n:
        raise TooManySimplexPoints(
            f"enumeration needs n <= #X, got n={spec.n} for a {X.n}-point space")
    diam, alpha, beta = _partition_profile(X, spec.n)
    t = spec.t
    return float(np.maximum(np.maximum(diam, t - alpha), beta - t).min()) / 2


def closed_form_cases(spec: SimplexSpec, X: FiniteMetricSpace) -> dict[str, float]:
    """Every closed-form case whose guard holds, mapped to its distance value."""
    m, n, t = X.n, spec.n, spec.t
    diam = diameter(X)
    out = {}
    if m < n:
        out["m<n"] = max(t, diam - t) / 2
    if m == n >= 2:
        a = min(X.rho)
        out["m=n"] = max(t - a, diam - t) / 2
    if m == n + 1 >= 3:
        a, b = sorted(X.rho)[:2]
        out["m=n+1"] = max(a, t - b, diam - t) / 2
    if m >= n and diam >= 2 * t:
        dn, _ = min_diameter_partition(X, n)
        out["d_n"] = max(dn, diam - t) / 2
    return out


def gh_to_simplex_closed(spec: SimplexSpec, X: FiniteMetricSpace, return_case: bool = False):
    """Closed-form distance to tΔn, falling back to enumeration when no guard holds."""
    cases = closed_form_cases(spec, X)
    for name in CASES:
        if name in cases:
            value, case = cases[name], name
            break
    else:
        value, case = gh_to_simplex_enum(spec, X), "enum"
    return (value, case) if return_case else value


def check_case_overlap(spec: SimplexSpec, X: FiniteMetricSpace, tol: float = 1e-12) -> dict[str, float]:
    cases = closed_form_cases(spec, X)
    vals = list(cases.values())
    if vals and max(vals) - min(vals) > tol:
        raise ConsistencyError(f"overlapping closed-form cases disagree: {cases}")
    return cases


def gh_simplex_simplex(t: float, p: int, s: float, q: int) -> float:
    """Distance between tΔp and sΔq."""
    if p < 1 or q < 1:
        raise ValueError("simplex sizes must be positive")
    if not (t > 0 and s > 0):
        raise NonpositiveScale("simplex edge lengths must be positive")
    # a single point sits at half the other diameter
    if p == 1 and q == 1:
        return 0.0
    if p == 1:
        return s / 2
    if q == 1:
        return t / 2
    if p == q:
        value = abs(t - s)
    elif p > q:
        value = max(t, s - t)
    else:
        value = max(s, t - s)
    if p != q and value < min(t, s):
        raise ConsistencyError(f"distance {value / 2} below half of min(t, s) for p != q")
    return value / 2


def _find_clique(X: FiniteMetricSpace, t: float, n: int, tol: float) -> tuple[int, ...] | None:
    m = X.matrix
    for idx in itertools.combinations(range(X.n), n):
        if all(abs(m[i, j] - t) <= tol for i, j in itertools.combinations(idx, 2)):
            return idx
    return None


@dataclass(frozen=True)
class SubsimplexBound:
    bound: float
    tight: bool
    value: float
    clique: tuple[int, ...]


def subsimplex_bound_check(X: FiniteMetricSpace, M: FiniteMetricSpace, t: float, n: int,
                           tol: float = TOL) -> SubsimplexBound:
    """If X holds n points pairwise at distance t and #M < n, then d(X, M) >= t/2.

    Equality holds when additionally diam X = t and diam M <= t.
    """
    if n < 2:
        raise HypothesisUnmet("needs n >= 2")
    if M.n > n - 1:
        raise HypothesisUnmet(f"#M = {M.n} must be at most n - 1 = {n - 1}")
    clique = _find_clique(X, t, n, tol)
    if clique is None:
        raise HypothesisUnmet(f"X has no {n} points pairwise at distance {t}")
    value = gh_exact(X, M)
    if value < t / 2 - tol:
        raise ConsistencyError(f"d(X, M) = {value} < t/2 = {t / 2}")
    tight = abs(diameter(X) - t) <= tol and diameter(M) <= t + tol
    if tight and abs(value - t / 2) > tol:
        raise ConsistencyError(f"expected d(X, M) = t/2 = {t / 2}, got {value}")
    return SubsimplexBound(t / 2, tight, value, clique)


def bn_member(B: FiniteMetricSpace, n: int, t: float, tol: float = TOL) -> bool:
    """Whether B is as far from tΔn as from a point, with diam B >= 2t."""
    if n < 2:
        raise ValueError("membership is defined for n >= 2")
    if not t > 0:
        raise NonpositiveScale("t must be positive")
    if diameter(B) < 2 * t - tol:
        return False
    return abs(gh_exact(simplex(1), B) - gh_exact(simplex(n, t), B)) <= tol


def spider_space(m: int, mu: float) -> FiniteMetricSpace:
    """2m points: the first m pairwise at distance mu, every other distance mu/2."""
    if m < 2:
        raise ValueError("spider space needs m >= 2")
    if not mu > 0:
        raise NonpositiveScale("mu must be positive")
    rho = tuple(mu if j < m else mu / 2 for i in range(2 * m) for j in range(i + 1, 2 * m))
    return FiniteMetricSpace(2 * m, rho)


def dn_equals_diameter(B: FiniteMetricSpace, n: int, tol: float = TOL) -> bool:
    dn, _ = min_diameter_partition(B, n)
    return math.isfinite(dn) and abs(dn - diameter(B)) <= tol
