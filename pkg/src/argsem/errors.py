"""Exception types shared across the package."""


class ArgumentationError(Exception):
    """Base class for all argsem errors."""


class FormulaSyntaxError(ArgumentationError):
    """Raised by the claim parser; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class DocumentError(ArgumentationError):
    """Raised by the .arg document reader; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownArgumentError(ArgumentationError):
    """An operation referenced an argument id that is not declared."""


class LabellingError(ArgumentationError):
    """Missing or inconsistent claim/value labels for the requested operation."""


class ShapeError(ArgumentationError):
    """The framework does not have the shape the operation requires."""


class EnumerationCapError(ArgumentationError):
    """Subset or order enumeration would exceed the configured cap."""
