"""Exception types shared across the toolkit."""


class WordRepError(Exception):
    """Base class for all toolkit errors."""


class GraphFormatError(WordRepError, ValueError):
    """Text could not be parsed as a graph, digraph, word or coloring."""


class MalformedHeaderError(GraphFormatError):
    pass


class EndpointOutOfRangeError(GraphFormatError):
    pass


class DuplicateEdgeError(GraphFormatError):
    pass


class SelfLoopError(GraphFormatError):
    pass


class BudgetExhausted(WordRepError, RuntimeError):
    """An exhaustive search ran out of nodes before reaching a verdict.

    Never to be read as a negative answer.
    """

    def __init__(self, message: str = "search budget exhausted", nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class InternalVerificationError(WordRepError, RuntimeError):
    """A constructed object failed its own postcondition check (a bug)."""


class NotAcyclicError(WordRepError, ValueError):
    pass


class NotSemiTransitiveError(WordRepError, ValueError):
    pass


class NotComparabilityError(WordRepError, ValueError):
    pass


class UncoverablePathError(WordRepError, ValueError):
    """No 2-uniform topological order of the 2-copy digraph covers the non-arcs at a path."""
