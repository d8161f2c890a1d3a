"""Certificates of repetition: k-bad index sequences and repetitive tree paths."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from nonrep.models.sequence import Square


class KBadWitness(BaseModel):
    """
    An index sequence i_1..i_{2r} with valley position m.

    Indices are 1-based positions into a sequence. The indices fall strictly down to
    i_m and rise strictly after it; whether they actually certify a k-bad sequence is
    decided by ``kspecial.check_witness``, which also needs the word and k.
    """

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"indices": [3, 1, 2, 3, 5, 6], "valley": 2}},
    )

    indices: tuple[int, ...] = Field(..., description="1-based positions i_1..i_{2r}")
    valley: int = Field(..., description="1-based position m of the minimum index")

    @model_validator(mode="after")
    def even_length_and_valley_in_range(self) -> "KBadWitness":
        """2r must be even and positive, and 1 < m <= 2r."""
        count = len(self.indices)
        if count == 0 or count % 2:
            raise ValueError(f"a witness has an even positive number of indices, got {count}")
        if not 1 < self.valley <= count:
            raise ValueError(f"valley must satisfy 1 < m <= {count}, got {self.valley}")
        return self

    @property
    def half_length(self) -> int:
        """r, half the number of indices."""
        return len(self.indices) // 2


class PathWitness(BaseModel):
    """An open path between two tree vertices whose color word is a square."""

    model_config = ConfigDict(frozen=True)

    u: int = Field(..., ge=1, description="First endpoint label")
    v: int = Field(..., ge=1, description="Second endpoint label")
    color_word: tuple[int, ...] = Field(..., description="1-based colors read from u to v")
    square: Square = Field(..., description="The square; it spans the whole color word")

    @model_validator(mode="after")
    def square_spans_word(self) -> "PathWitness":
        """Endpoints differ and the square covers the entire color word."""
        if self.u == self.v:
            raise ValueError("path endpoints must differ")
        if self.square.start != 0 or self.square.end != len(self.color_word):
            raise ValueError("the square must span the whole color word")
        return self
