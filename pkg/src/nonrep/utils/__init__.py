"""Utility modules for nonrep."""

from nonrep.utils.config import Config
from nonrep.utils.errors import (
    CheckpointMismatchError,
    ColoringFormatError,
    SequenceFormatError,
    SequenceTooShortError,
    UncoloredEdgeError,
)
from nonrep.utils.logging import configure_logging

__all__ = [
    "CheckpointMismatchError",
    "ColoringFormatError",
    "Config",
    "SequenceFormatError",
    "SequenceTooShortError",
    "UncoloredEdgeError",
    "configure_logging",
]
