"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid numeric parameters (non-prime p, k out of range, bad schedule)."""


class ContextMismatchError(ValueError):
    """Operands live in different group contexts."""


class PreconditionError(ValueError):
    """A norm or annihilation hypothesis does not hold in the universal ring.

    ``residual`` carries the offending normal form.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ParseError(ValueError):
    """Malformed serialized document; ``location`` names where parsing failed."""

    def __init__(self, message, location=None):
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location
