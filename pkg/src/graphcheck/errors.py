"""Exception types shared across the package."""


class GraphCheckError(Exception):
    """Base class for all errors raised by graphcheck."""


class DomainError(GraphCheckError, ValueError):
    """A numeric argument lies outside the domain where a formula is valid."""


class SupportTooLarge(GraphCheckError, ValueError):
    """Exhaustive enumeration was requested on too many qubits."""


class SpecInvalid(GraphCheckError, ValueError):
    """An RHG lattice specification violates its constraints."""


class VertexOutOfRange(GraphCheckError, IndexError):
    """A vertex id does not belong to the graph."""


class ParseError(GraphCheckError, ValueError):
    """A graph file could not be parsed."""


class InsufficientVertices(GraphCheckError):
    """Fewer eligible test vertices exist than requested.

    Attributes:
        found: number of vertices the greedy scan managed to select.
        requested: number of vertices that were asked for.
    """

    def __init__(self, found: int, requested: int, degree: int):
        self.found = found
        self.requested = requested
        self.degree = degree
        super().__init__(
            f"only {found} of {requested} degree-{degree} vertices could be "
            "placed at pairwise distance >= 3"
        )


class TooManyQubits(GraphCheckError, ValueError):
    """A dense statevector was requested for more qubits than the cap allows."""
