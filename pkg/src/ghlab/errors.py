"""Exception hierarchy shared by every ghlab module."""


class GHLabError(Exception):
    """Base class for all errors raised by ghlab."""


class MetricError(GHLabError, ValueError):
    """Input does not describe a valid finite metric space."""


class NotSquare(MetricError):
    pass


class AsymmetricEntry(MetricError):
    def __init__(self, i, j, a, b):
        super().__init__(f"asymmetric entry at ({i}, {j}): {a!r} != {b!r}")
        self.i, self.j = i, j


class NonzeroDiagonal(MetricError):
    def __init__(self, i, value):
        super().__init__(f"nonzero diagonal entry at ({i}, {i}): {value!r}")
        self.i = i


class NonpositiveDistance(MetricError):
    def __init__(self, i, j, value):
        super().__init__(f"nonpositive distance between {i} and {j}: {value!r}")
        self.i, self.j = i, j


class TriangleViolation(MetricError):
    """d(i, k) > d(i, j) + d(j, k) beyond tolerance; j is the middle point."""

    def __init__(self, i, j, k, excess):
        super().__init__(
            f"triangle inequality violated: d({i},{k}) exceeds "
            f"d({i},{j}) + d({j},{k}) by {excess!r}"
        )
        self.i, self.j, self.k = i, j, k
        self.triple = (i, j, k)


class NotInCone(TriangleViolation):
    """A distance vector outside the metric cone."""


class NonpositiveCoordinate(NonpositiveDistance):
    pass


class EmptySpace(MetricError):
    pass


class NonFiniteValue(MetricError):
    pass


class NonpositiveScale(GHLabError, ValueError):
    pass


class TooFewPoints(GHLabError, ValueError):
    pass


class EmptySubset(GHLabError, ValueError):
    pass


class MixedSpaces(GHLabError, ValueError):
    pass


class SamePoint(GHLabError, ValueError):
    pass


class EmptyRelation(GHLabError, ValueError):
    pass


class NotACorrespondence(GHLabError, ValueError):
    pass


class BadBlockCount(GHLabError, ValueError):
    pass


class CardinalityMismatch(GHLabError, ValueError):
    pass


class TooManySimplexPoints(GHLabError, ValueError):
    pass


class HypothesisUnmet(GHLabError, ValueError):
    pass


class DimensionMismatch(GHLabError, ValueError):
    pass


class BadPermutation(GHLabError, ValueError):
    pass


class TooLarge(GHLabError, ValueError):
    pass


class ParseError(GHLabError, ValueError):
    pass


class ConsistencyError(GHLabError, AssertionError):
    """A computed value disagrees with a closed-form identity it must satisfy."""
