"""Exception types shared across the package."""


class UltragraphError(Exception):
    """Base class for all errors raised by this package."""


class DocumentError(UltragraphError):
    """A document (JSON ultragraph, pair file, expression) could not be parsed.

    ``position`` is a character offset into the input when one is known.
    """

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position

    def __str__(self):
        base = super().__str__()
        if self.position is not None:
            return f"{base} (at offset {self.position})"
        return base


class ValidationError(UltragraphError):
    """Structurally well-formed input that violates a presentation invariant."""


class NotAdmissible(UltragraphError):
    """A (W, B) pair fails the admissibility requirements."""


class CapExceeded(UltragraphError):
    """Subset enumeration was requested on a vertex set above the cap."""


class ContextMismatch(UltragraphError):
    """Symbolic elements from different contexts were combined."""
