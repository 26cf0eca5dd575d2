"""Exception hierarchy for squareperc."""


class SquarePercError(Exception):
    """Base class for all library errors."""


class GraphError(SquarePercError, ValueError):
    pass


class OutOfRangeError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class DuplicateVertexError(GraphError):
    pass


class EmptyQuerySetError(GraphError):
    pass


class NotANonEdgeError(GraphError):
    pass


class ParseError(GraphError):
    """Malformed edge-list input; ``line`` is 1-based (0 when not line-specific)."""

    def __init__(self, message, line=0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class InvalidProbabilityError(SquarePercError, ValueError):
    pass


class CapExceededError(SquarePercError, RuntimeError):
    """A configured memory or size guard would be exceeded."""


class TooLargeError(CapExceededError):
    pass


class EdgeCapExceededError(CapExceededError):
    pass


class SquareCapExceededError(CapExceededError):
    pass


class CompleteGraphError(SquarePercError, ValueError):
    """T1 has no vertices, so connectivity / diameter is undefined."""


class OverlapDetectedError(SquarePercError, RuntimeError):
    pass


class InvalidParamsError(SquarePercError, ValueError):
    pass


class BracketInvalidError(SquarePercError, ValueError):
    pass
