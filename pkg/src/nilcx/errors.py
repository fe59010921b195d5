"""Exception types shared across the package."""


class ValidationError(Exception):
    """Input data violates a structural requirement (Jacobi, J*J = -I, ...)."""


class PreconditionError(Exception):
    """An operation was called outside its documented domain."""


class NotSolvableError(Exception):
    """A linear system has no solution in the requested span."""


class SelfCheckError(Exception):
    """Two independent computations of the same quantity disagree.

    Raised when a dual-route consistency check fails; indicates a bug, never
    bad user input.
    """


class ParseError(Exception):
    """Syntax error in an .alg file, with 1-based position information."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col
