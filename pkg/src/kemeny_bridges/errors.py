"""Exception hierarchy shared by all modules."""


class KemenyError(Exception):
    """Base class for every error raised by this package."""


class GraphParseError(KemenyError, ValueError):
    """Malformed edge-list input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphValidationError(KemenyError, ValueError):
    """Structurally invalid graph (self-loop, bad index, not a tree, ...)."""


class DisconnectedGraphError(GraphValidationError):
    """The graph is not connected; ``pair`` names two mutually unreachable vertices."""

    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)


class NotABridgeError(GraphValidationError):
    """An edge listed as a bridge lies on a cycle (given as ``cycle``)."""

    def __init__(self, message, cycle=None):
        self.cycle = cycle
        super().__init__(message)


class OracleLimitError(KemenyError):
    """Exhaustive enumeration refused because the graph is too large."""


class SearchCapError(KemenyError):
    """Exhaustive placement search exceeds the configured cap."""

    def __init__(self, message, cap=None):
        self.cap = cap
        super().__init__(message)


class InconsistentResultError(KemenyError, ArithmeticError):
    """Two routes that must agree produced different values."""
