class DomainError(ValueError):
    """Input outside the domain of an operation (bad sizes, mismatched shapes, caps)."""


class ParseError(DomainError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at token {position})"
        super().__init__(message)


class InvariantViolation(AssertionError):
    """Two independent computations of the same quantity disagreed."""
