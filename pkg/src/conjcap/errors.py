"""Exception types shared across the package."""


class GraphError(ValueError):
    """Base class for graph construction and validation failures."""


class GraphFormatError(GraphError):
    """Malformed graph text: bad tokens, self-loops, duplicate edges."""


class IsolatedVertexError(GraphError):
    """An operation that requires every vertex to have a neighbor was
    given a graph with isolated vertices."""


class DomainError(ValueError):
    """A scalar argument fell outside the domain of a kernel function."""


class CenteringError(ValueError):
    """A distribution is not centered on the given stable set, or the
    set is not maximal stable, so structural checks cannot proceed."""


class SizeGuardError(RuntimeError):
    """An exhaustive oracle was asked to run above its size guard."""
