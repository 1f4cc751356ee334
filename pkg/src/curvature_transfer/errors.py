"""Exception types shared across the toolkit."""


class CurvatureError(Exception):
    """Base class for all toolkit errors."""


class GraphFormatError(CurvatureError, ValueError):
    """Malformed edge-list input or a violation of graph simplicity."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParameterError(CurvatureError, ValueError):
    """Invalid generator or modulus parameters."""


class GenerationError(CurvatureError, RuntimeError):
    """A randomized generator exhausted its retry budget."""


class ConnectivityError(CurvatureError, RuntimeError):
    """Some support pair of a transport problem is unreachable."""


class NormalizationError(CurvatureError, ValueError):
    """Measures that do not carry the same total mass."""


class DomainError(CurvatureError, ValueError):
    """A modulus evaluated outside the range where it is defined."""
