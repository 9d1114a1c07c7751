"""Exception hierarchy shared by every layer of the package."""


class MatchgeoError(Exception):
    """Base class for all package errors."""


class ValidationError(MatchgeoError, ValueError):
    """An input value violates a documented precondition."""


class TopologyError(MatchgeoError):
    """A gate or gadget needs an edge the host graph does not have."""


class RoutingError(MatchgeoError):
    """No hole-assisted route exists for the requested move."""


class CompilationError(MatchgeoError):
    """A strategy's structural preconditions do not hold."""


class ConfigurationError(MatchgeoError):
    """A layout or ancilla placement is inconsistent with the procedure."""


class ResourceLimitError(MatchgeoError):
    """The statevector oracle would exceed the configured qubit cap."""


class ParseError(MatchgeoError):
    """A text file could not be parsed.

    ``line`` is 1-based, or ``None`` when the problem is not tied to a line.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
