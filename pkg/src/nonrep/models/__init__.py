"""Data models for nonrep."""

from nonrep.models.report import (
    ChromaticReport,
    ChromaticTaskResult,
    FkBranchResult,
    FkReport,
    TableCell,
)
from nonrep.models.sequence import Sequence, Square
from nonrep.models.tree import EdgeColoring, TreeShape
from nonrep.models.witness import KBadWitness, PathWitness

__all__ = [
    "ChromaticReport",
    "ChromaticTaskResult",
    "EdgeColoring",
    "FkBranchResult",
    "FkReport",
    "KBadWitness",
    "PathWitness",
    "Sequence",
    "Square",
    "TableCell",
    "TreeShape",
]
