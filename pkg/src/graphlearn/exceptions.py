class GraphValidationError(ValueError):
    """A matrix violates the graph Laplacian invariants."""


class EmptyGraphError(ValueError):
    """An operation produced or received a graph with no edges."""


class SignalFormatError(ValueError):
    """A signal file could not be parsed into a rectangular numeric matrix."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class LStepNotConverged(RuntimeError):
    """The L-step solver hit its iteration cap before reaching tolerance.

    The best iterate found is kept on ``self.best`` as a ``QpSolution``.
    """

    def __init__(self, message, best):
        super().__init__(message)
        self.best = best
