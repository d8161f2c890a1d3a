"""Word-level models: finite sequences and the squares found in them."""

from collections.abc import Iterable
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Sequence(BaseModel):
    """
    A finite word over the alphabet {0, ..., alphabet_size - 1}.

    Symbols are stored 0-based. Everything that leaves the process (text, JSON,
    CLI output) is 1-based; use ``from_external`` and ``to_external`` at the boundary.
    """

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "symbols": [0, 1, 2, 3, 0, 1],
                "alphabet_size": 4,
            }
        },
    )

    symbols: tuple[int, ...] = Field(default=(), description="0-based symbol identifiers")
    alphabet_size: int = Field(default=0, ge=0, description="Number of admissible symbols")

    @model_validator(mode="after")
    def symbols_within_alphabet(self) -> "Sequence":
        """Every symbol must be a valid 0-based identifier below alphabet_size."""
        for position, symbol in enumerate(self.symbols):
            if symbol < 0 or symbol >= self.alphabet_size:
                raise ValueError(
                    f"symbol {symbol} at position {position} is outside the alphabet "
                    f"of size {self.alphabet_size}"
                )
        return self

    @classmethod
    def of(cls, symbols: Iterable[int], alphabet_size: Optional[int] = None) -> "Sequence":
        """Build from 0-based symbols; the alphabet defaults to max symbol + 1."""
        values = tuple(symbols)
        if alphabet_size is None:
            alphabet_size = max(values) + 1 if values else 0
        return cls(symbols=values, alphabet_size=alphabet_size)

    @classmethod
    def from_external(
        cls, values: Iterable[int], alphabet_size: Optional[int] = None
    ) -> "Sequence":
        """
        Build from 1-based symbols as written in files and on the command line.

        Args:
            values: 1-based symbols.
            alphabet_size: Alphabet size; defaults to the largest symbol.

        Raises:
            ValueError: If a symbol is smaller than 1.
        """
        symbols = []
        for value in values:
            if value < 1:
                raise ValueError(f"external symbols are 1-based, got {value}")
            symbols.append(value - 1)
        return cls.of(symbols, alphabet_size)

    def to_external(self) -> list[int]:
        """Return the 1-based symbols."""
        return [symbol + 1 for symbol in self.symbols]

    def prefix(self, length: int) -> "Sequence":
        """Return the first ``length`` symbols over the same alphabet."""
        return Sequence(symbols=self.symbols[:length], alphabet_size=self.alphabet_size)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, index: int) -> int:
        return self.symbols[index]

    def __str__(self) -> str:
        return " ".join(str(value) for value in self.to_external())


class Square(BaseModel):
    """A factor ww: positions [start, start+r) equal positions [start+r, start+2r)."""

    model_config = ConfigDict(frozen=True)

    start: int = Field(..., ge=0, description="0-based index of the first symbol")
    half_length: int = Field(..., ge=1, description="Length r of each half")

    @property
    def end(self) -> int:
        """Exclusive end index of the square."""
        return self.start + 2 * self.half_length
