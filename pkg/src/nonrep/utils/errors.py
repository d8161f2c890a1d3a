"""Exceptions raised by nonrep."""

from typing import Optional


class SequenceTooShortError(ValueError):
    """A sequence is shorter than an operation requires."""

    def __init__(self, required: int, actual: int, purpose: str = "") -> None:
        self.required = required
        self.actual = actual
        suffix = f" for {purpose}" if purpose else ""
        super().__init__(f"sequence of length {actual} is too short{suffix}: need {required} symbols")


class UncoloredEdgeError(ValueError):
    """A coloring has an edge without a color where a complete coloring is needed."""

    def __init__(self, vertex: int) -> None:
        self.vertex = vertex
        super().__init__(f"edge to vertex {vertex} has no color")


class _FormatError(ValueError):
    """Malformed text input, located by line and token."""

    kind = "input"

    def __init__(self, message: str, line: int, token: Optional[str] = None) -> None:
        self.line = line
        self.token = token
        where = f"line {line}"
        if token is not None:
            where += f", token {token!r}"
        super().__init__(f"malformed {self.kind} at {where}: {message}")


class SequenceFormatError(_FormatError):
    """Malformed sequence text."""

    kind = "sequence"


class ColoringFormatError(_FormatError):
    """Malformed coloring file."""

    kind = "coloring"


class CheckpointMismatchError(ValueError):
    """A checkpoint file was written for different search parameters."""
