"""Exception taxonomy shared by the whole engine.

Every error raised on purpose derives from AquanimError, so callers (CLI,
HTTP service) can map engine failures to exit codes / status codes without
fishing for stdlib exceptions.
"""

from __future__ import annotations


class AquanimError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AquanimError, ValueError):
    """An argument fell outside its mathematical domain."""


class ShapeError(AquanimError, ValueError):
    """Paired vectors disagree in length or element values."""


class ConservationError(AquanimError, ValueError):
    """Endpoint states do not carry the same total area."""


class IngestionError(AquanimError, ValueError):
    """Raw input (CSV text, value lists) could not be ingested."""


class SceneSyntaxError(AquanimError, ValueError):
    """Scene-spec or frames text is not well-formed JSON."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class SchemaError(AquanimError, ValueError):
    """A document is well-formed but violates the expected structure."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class InvariantError(AquanimError, ValueError):
    """A constructed value violates a model invariant."""


class ParameterError(AquanimError, ValueError):
    """Planner parameters do not fit the given scene."""


class RenderError(AquanimError, ValueError):
    """A frame cannot be rendered."""
