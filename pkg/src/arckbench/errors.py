"""Exception types shared across the package."""


class GraphError(ValueError):
    """A graph value violates a structural invariant."""


class SelfLoop(GraphError):
    def __init__(self, edge_id, vertex):
        self.edge_id = edge_id
        self.vertex = vertex
        super().__init__(f"edge {edge_id} is a self-loop at vertex {vertex}")


class ParallelEdge(GraphError):
    def __init__(self, edge_id, other_id, u, v):
        self.edge_id = edge_id
        self.other_id = other_id
        super().__init__(
            f"edge {edge_id} duplicates edge {other_id} on endpoints ({u}, {v})"
        )


class DanglingEndpoint(GraphError):
    def __init__(self, edge_id, vertex):
        self.edge_id = edge_id
        self.vertex = vertex
        super().__init__(f"edge {edge_id} references unknown vertex {vertex}")


class DuplicateId(GraphError):
    def __init__(self, kind, value):
        self.kind = kind
        self.value = value
        super().__init__(f"duplicate {kind} id {value}")


class MissingCoordinate(GraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has no lattice coordinate")


class ParseError(ValueError):
    """Malformed serialized input; carries a line/column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" at line {line}" if line is not None else ""
        where += f", column {column}" if column is not None else ""
        super().__init__(message + where)


class IllegalMove(ValueError):
    def __init__(self, edge_id, reason):
        self.edge_id = edge_id
        self.reason = reason
        super().__init__(f"illegal move on edge {edge_id}: {reason}")


class IllegalFlip(ValueError):
    def __init__(self, edge_id, reason):
        self.edge_id = edge_id
        self.reason = reason
        super().__init__(f"illegal flip of edge {edge_id}: {reason}")


class BudgetExceeded(RuntimeError):
    def __init__(self, limit):
        self.limit = limit
        super().__init__(f"search node budget of {limit} exceeded")


class UndefinedTemplate(KeyError):
    def __init__(self, kind, backend):
        self.kind = kind
        self.backend = backend
        super().__init__(f"no gadget template for ({kind}, {backend})")


class NonBasisVertex(ValueError):
    def __init__(self, vertex, detail=""):
        self.vertex = vertex
        extra = f": {detail}" if detail else ""
        super().__init__(f"vertex {vertex} does not lower to a known pattern{extra}")


class NotPlanarEmbedding(ValueError):
    pass


class PortMismatch(ValueError):
    pass


class NotACompiledInstance(ValueError):
    """Variant transforms need the compilation trace emitted alongside the instance."""


class LayoutError(RuntimeError):
    """The lattice router could not place the circuit without collisions."""
