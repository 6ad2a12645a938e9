"""Error hierarchy for srglab.

Every error is a ValueError so callers that only guard against bad inputs keep
working; the CLI turns any SrgLabError into a machine-readable error record.
"""

from typing import Any


class SrgLabError(ValueError):
    """Base class for all srglab errors."""

    def to_record(self) -> dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self)}


# Finite fields


class NonPrimeCharacteristic(SrgLabError):
    pass


class ReducibleModulus(SrgLabError):
    pass


class NotASubfield(SrgLabError):
    pass


class EvenCharacteristic(SrgLabError):
    pass


class WrongField(SrgLabError):
    pass


# Geometry


class UnsupportedParameters(SrgLabError):
    pass


class DimensionMismatch(SrgLabError):
    pass


class DegenerateForm(SrgLabError):
    pass


# Graphs


class NotStronglyRegular(SrgLabError):
    """Common-neighbour count is not constant over adjacent or non-adjacent pairs.

    Attributes:
        pair: first offending vertex pair
        count: its common-neighbour count
        expected: the count established by the first pair of the same kind
        adjacent: whether the offending pair is an edge
    """

    def __init__(self, pair: tuple[int, int], count: int, expected: int, adjacent: bool):
        self.pair = pair
        self.count = count
        self.expected = expected
        self.adjacent = adjacent
        kind = "adjacent" if adjacent else "non-adjacent"
        super().__init__(
            f"{kind} pair {pair} has {count} common neighbours, expected {expected}"
        )


class NotRegular(NotStronglyRegular):
    """Degree is not constant.

    Attributes:
        vertex: first vertex whose degree differs from vertex 0
        degree: degree of that vertex
        expected: degree of vertex 0
    """

    def __init__(self, vertex: int, degree: int, expected: int):
        self.vertex = vertex
        self.degree = degree
        self.expected = expected
        SrgLabError.__init__(
            self, f"Vertex {vertex} has degree {degree}, vertex 0 has degree {expected}"
        )


class IrrationalEigenvalues(SrgLabError):
    pass


# Constructions and verification


class NotNested(SrgLabError):
    pass


class NotDisjoint(SrgLabError):
    pass


class MixedTypes(SrgLabError):
    pass


class WrongFamily(SrgLabError):
    pass


class WrongSquareClass(SrgLabError):
    pass


class NotIntriguing(SrgLabError):
    pass


class TooManyOrbits(SrgLabError):
    pass
