"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Malformed input: bad labels, failed preconditions, schema violations."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(message)
        self.pointer = pointer

    @property
    def message(self) -> str:
        return super().__str__()

    def __str__(self) -> str:
        return f"{self.pointer}: {self.message}" if self.pointer else self.message


class GuardExceeded(RuntimeError):
    """An enumeration would exceed its size guard."""
