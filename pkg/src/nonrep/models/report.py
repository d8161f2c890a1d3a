"""Outcomes of the exhaustive searches and the table of chromatic indices."""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from nonrep.models.tree import EdgeColoring, TreeShape

SearchMode = Literal["exists", "count_classes"]


class FkReport(BaseModel):
    """Longest k-special sequences on n symbols found by ``search_fk``."""

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "k": 2,
                "n": 4,
                "max_length": 5,
                "exhaustive": True,
                "nodes_explored": 9,
                "witnesses": [[1, 2, 3, 4, 1]],
            }
        }
    )

    k: int = Field(..., ge=1, description="Locality parameter")
    n: int = Field(..., ge=1, description="Alphabet size")
    max_length: int = Field(..., ge=0, description="Longest length reached (a lower bound unless exhaustive)")
    exhaustive: bool = Field(..., description="Whether the search tree was explored completely")
    nodes_explored: int = Field(default=0, ge=0, description="Search nodes visited")
    witnesses: list[list[int]] = Field(
        default_factory=list,
        description="Normalized 1-based sequences of length max_length, in lexicographic order",
    )


class FkBranchResult(BaseModel):
    """One top-level branch of ``search_fk``; also the checkpoint frame format."""

    branch: list[int] = Field(..., description="1-based prefix that roots this branch")
    max_length: int = Field(..., ge=0)
    witnesses: list[list[int]] = Field(default_factory=list)
    nodes_explored: int = Field(default=0, ge=0)
    complete: bool = Field(..., description="Branch explored without hitting the deadline")
    capped: bool = Field(default=False, description="Some path reached the length cap")


class ChromaticReport(BaseModel):
    """Outcome of an exact search for nonrepetitive colorings of one tree."""

    shape: TreeShape
    palette: Optional[int] = Field(default=None, description="Palette searched, when fixed")
    mode: SearchMode = Field(default="exists")
    pi_prime: Optional[int] = Field(default=None, description="Thue chromatic index, when determined")
    lower_bound: int = Field(default=1, ge=0, description="Largest palette size proven insufficient, plus one")
    upper_bound: Optional[int] = Field(default=None, description="Smallest palette size with a known witness")
    witness_coloring: Optional[EdgeColoring] = Field(default=None)
    class_count: Optional[int] = Field(
        default=None, description="Colorings up to automorphism and color renaming"
    )
    nodes_explored: int = Field(default=0, ge=0)
    exhaustive: bool = Field(default=False)

    @property
    def found(self) -> bool:
        """Whether a nonrepetitive coloring was found."""
        return self.witness_coloring is not None


class ChromaticTaskResult(BaseModel):
    """One branch of a coloring search; also the checkpoint frame format."""

    prefix: list[int] = Field(..., description="Colors fixed on edges 2, 3, ... for this branch")
    witness: Optional[list[int]] = Field(default=None, description="Complete coloring, if found")
    canonical_forms: list[list[int]] = Field(default_factory=list)
    nodes_explored: int = Field(default=0, ge=0)
    complete: bool = Field(...)


class TableCell(BaseModel):
    """One entry of the table of pi'(T_{k,h})."""

    k: int = Field(..., ge=1)
    h: int = Field(..., ge=1)
    lower: int = Field(..., ge=1)
    upper: int = Field(..., ge=1)
    provenance: str = Field(..., description="Where the bounds come from")

    @property
    def exact(self) -> bool:
        """Whether the bounds coincide."""
        return self.lower == self.upper

    @property
    def cell(self) -> str:
        """The table entry: 'v' when exact, 'lo,hi' otherwise."""
        return str(self.lower) if self.exact else f"{self.lower},{self.upper}"
