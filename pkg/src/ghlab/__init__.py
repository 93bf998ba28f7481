"""Exact Gromov-Hausdorff distances between finite metric spaces, distances to
simplexes, the relabeling action on distance vectors, and edge permutations of K_n."""

__version__ = "0.1.0"

from .metric import (
    FiniteMetricSpace,
    PointSubset,
    diameter,
    from_condensed,
    random_space,
    restrict,
    scale,
    simplex,
    validate,
)
from .solver import gh_bijective, gh_exact, min_diameter_partition

__all__ = [
    "FiniteMetricSpace",
    "PointSubset",
    "diameter",
    "from_condensed",
    "gh_bijective",
    "gh_exact",
    "min_diameter_partition",
    "random_space",
    "restrict",
    "scale",
    "simplex",
    "validate",
]
