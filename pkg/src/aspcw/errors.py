"""Exception types shared across the package."""


class AspcwError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(AspcwError):
    """Syntax error in a program, expression, or QBF file."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)


class NormalizationError(AspcwError):
    """A rule mentions the same atom in more than one of head/pos/neg."""


class ExpressionError(AspcwError):
    """Structurally invalid expression (duplicate vertex, bad labels, ...)."""


class SignConflictError(ExpressionError):
    """An edge insertion would put a second, different sign on a vertex pair."""


class BoundExceededError(AspcwError):
    """An exhaustive computation was requested beyond its configured bound."""
