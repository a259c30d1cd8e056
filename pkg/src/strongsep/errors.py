"""Exception types raised across the package."""


class StrongSepError(ValueError):
    """Base class for all domain errors."""


class SupportError(StrongSepError):
    """Empty support or a column index outside ``1..n``."""


class ParseError(StrongSepError):
    """Malformed matrix or code text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ScaleError(StrongSepError):
    """Input too large for an exhaustive routine."""


class NotSeparableError(StrongSepError):
    """Several candidate positive sets explain one outcome."""


class CodeNotReducedError(StrongSepError):
    """A q-ary code contains repeated words."""


class ParameterError(StrongSepError):
    """A numeric parameter is outside the supported range."""
