"""Exception types raised by lcfano."""


class LCFanoError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInput(LCFanoError):
    """The input does not span the ambient space (affine dimension < d)."""


class DegenerateSimplex(DegenerateInput):
    pass


class OriginNotInterior(LCFanoError):
    pass


class TooManyVertices(LCFanoError):
    pass


class RedundantPoint(LCFanoError):
    """An input point is not a vertex of the convex hull of the inputs."""

    def __init__(self, point):
        super().__init__(f"point {list(point)} is not a vertex of the convex hull")
        self.point = tuple(point)


class EnumerationTooLarge(LCFanoError):
    """A lattice-point box scan would exceed the configured cap."""

    def __init__(self, size, cap):
        super().__init__(f"box contains {size} lattice points, cap is {cap}")
        self.size = size
        self.cap = cap


class NotAProbabilityVector(LCFanoError):
    pass


class PreconditionFailed(LCFanoError):
    pass


class NotFound(LCFanoError):
    pass


class IndecisiveEnclosure(LCFanoError):
    """An interval enclosure was too wide to decide a strict comparison."""


class IndexOutOfRange(LCFanoError):
    pass


class GridTooCoarse(LCFanoError):
    pass


class NotMinimal(LCFanoError):
    pass


class IsASimplex(LCFanoError):
    pass


class SearchExhausted(LCFanoError):
    pass


class InvalidDecomposition(LCFanoError):
    pass
