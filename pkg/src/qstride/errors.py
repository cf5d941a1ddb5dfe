"""Exception types shared across the simulator."""


class QstrideError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(QstrideError, ValueError):
    """Invalid inputs: bad indices, malformed masks, non-unitary kernels,
    circuits that violate their declared register sizes."""


class ParseError(ValidationError):
    """Circuit document rejected. ``path`` points at the offending field
    (e.g. ``ops[2].body[0].target``); ``line``/``column`` are set for raw
    JSON syntax errors."""

    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = ""
        if path:
            where = f" at {path}"
        elif line is not None:
            where = f" at line {line}, column {column}"
        super().__init__(f"{message}{where}")


class LimitError(QstrideError, RuntimeError):
    """A resource guardrail was hit (qubit ceiling, dense-oracle size cap)."""
