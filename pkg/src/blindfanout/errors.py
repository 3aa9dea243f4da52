class InvalidInputError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class NotFoundError(LookupError):
    """Raised when a search exhausts its budget without a solution."""
