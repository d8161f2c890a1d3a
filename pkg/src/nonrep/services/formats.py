"""Text and JSON formats for sequences and colorings."""

import json
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from nonrep.models.sequence import Sequence
from nonrep.models.tree import EdgeColoring, TreeShape
from nonrep.utils.errors import ColoringFormatError, SequenceFormatError

_LETTERS = {"a": 1, "b": 2, "c": 3}


def parse_sequence(text: str, alphabet_size: Optional[int] = None) -> Sequence:
    """
    Parse whitespace-separated 1-based symbols.

    Letters a, b, c stand for 1, 2, 3, either as separate tokens or run together
    as in "cabcba".

    Args:
        text: The sequence text; may span several lines.
        alphabet_size: Alphabet size; defaults to the largest symbol.

    Raises:
        SequenceFormatError: On a token that is neither a positive integer nor a
            word over a, b, c.
    """
    values: list[int] = []
    for number, line in enumerate(text.splitlines(), start=1):
        for token in line.split():
            if token.isdigit() and int(token) >= 1:
                values.append(int(token))
            elif token.isalpha() and all(letter in _LETTERS for letter in token.lower()):
                values.extend(_LETTERS[letter] for letter in token.lower())
            else:
                raise SequenceFormatError("expected a positive integer or a, b, c", number, token)
    if alphabet_size is not None and values and max(values) > alphabet_size:
        raise SequenceFormatError(
            f"symbol {max(values)} exceeds the alphabet size {alphabet_size}", 1
        )
    return Sequence.from_external(values, alphabet_size)


def format_sequence(seq: Sequence) -> str:
    """One line of 1-based symbols."""
    return str(seq)


def parse_sequence_json(text: str) -> Sequence:
    """Parse a JSON list of 1-based symbols or an object with a "symbols" list."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise SequenceFormatError(e.msg, e.lineno) from None
    values = document.get("symbols") if isinstance(document, dict) else document
    if not isinstance(values, list) or not all(
        isinstance(value, int) and value >= 1 for value in values
    ):
        raise SequenceFormatError("expected a list of positive integers", 1)
    alphabet_size = document.get("alphabet_size") if isinstance(document, dict) else None
    return Sequence.from_external(values, alphabet_size)


def load_sequence(text: str) -> Sequence:
    """Parse either sequence format, recognizing JSON by its opening bracket."""
    if text.lstrip().startswith(("{", "[")):
        return parse_sequence_json(text)
    return parse_sequence(text)


def read_sequence(path: Path) -> Sequence:
    """Read a sequence file, text or JSON."""
    return load_sequence(Path(path).read_text())


def format_coloring_text(coloring: EdgeColoring) -> str:
    """Header "k h palette" followed by one "child color" line per edge."""
    shape = coloring.shape
    lines = [f"{shape.k} {shape.h} {coloring.palette_size}"]
    for v, color in enumerate(coloring.colors, start=2):
        lines.append(f"{v} {color if color is not None else 0}")
    return "\n".join(lines) + "\n"


def format_coloring_json(coloring: EdgeColoring) -> str:
    """{"k", "h", "palette", "colors"} with colors[i] the color of the edge to i + 2."""
    document = {
        "k": coloring.shape.k,
        "h": coloring.shape.h,
        "palette": coloring.palette_size,
        "colors": [color if color is not None else 0 for color in coloring.colors],
    }
    return json.dumps(document)


def _build_coloring(k: int, h: int, palette: int, colors: list[int], line: int) -> EdgeColoring:
    try:
        shape = TreeShape(k=k, h=h)
    except ValidationError as e:
        raise ColoringFormatError(f"invalid tree: {e.errors()[0]['msg']}", line) from None
    if len(colors) != shape.edge_count:
        raise ColoringFormatError(
            f"header describes {shape} with {shape.edge_count} edges, found {len(colors)}", line
        )
    try:
        return EdgeColoring(
            shape=shape,
            colors=tuple(color if color else None for color in colors),
            palette_size=palette,
        )
    except ValidationError as e:
        raise ColoringFormatError(e.errors()[0]["msg"], line) from None


def parse_coloring_text(text: str) -> EdgeColoring:
    """
    Parse the text coloring format; color 0 marks an uncolored edge.

    Raises:
        ColoringFormatError: On a malformed line or when the header disagrees with
            the number of edge lines.
    """
    rows = [(n, line.split()) for n, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not rows:
        raise ColoringFormatError("missing header 'k h palette'", 1)
    number, header = rows[0]
    if len(header) != 3 or not all(token.isdigit() for token in header):
        raise ColoringFormatError("header must be 'k h palette'", number, " ".join(header))
    k, h, palette = (int(token) for token in header)

    colors: list[int] = []
    for number, tokens in rows[1:]:
        if len(tokens) != 2 or not all(token.isdigit() for token in tokens):
            raise ColoringFormatError("expected 'child_vertex color'", number, " ".join(tokens))
        child, color = int(tokens[0]), int(tokens[1])
        if child != len(colors) + 2:
            raise ColoringFormatError(f"expected edge {len(colors) + 2}", number, tokens[0])
        colors.append(color)
    return _build_coloring(k, h, palette, colors, rows[-1][0])


def parse_coloring_json(text: str) -> EdgeColoring:
    """Parse the JSON coloring format."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ColoringFormatError(e.msg, e.lineno) from None
    try:
        k, h, palette = int(document["k"]), int(document["h"]), int(document["palette"])
        colors = [int(color) for color in document["colors"]]
    except (KeyError, TypeError, ValueError) as e:
        raise ColoringFormatError(f"missing or invalid field: {e}", 1) from None
    return _build_coloring(k, h, palette, colors, 1)


def parse_coloring(text: str) -> EdgeColoring:
    """Parse either coloring format, recognizing JSON by its opening brace."""
    if text.lstrip().startswith("{"):
        return parse_coloring_json(text)
    return parse_coloring_text(text)


def read_coloring(path: Path) -> EdgeColoring:
    """Read a coloring file in either format."""
    return parse_coloring(Path(path).read_text())


def write_coloring(path: Path, coloring: EdgeColoring) -> list[Path]:
    """
    Write a coloring in both formats.

    The text format goes to ``path`` and JSON next to it with a ".json" suffix; a
    path already ending in ".json" gets the JSON and a ".txt" sibling instead.

    Returns:
        The files written.
    """
    path = Path(path)
    if path.suffix == ".json":
        text_path, json_path = path.with_suffix(".txt"), path
    else:
        text_path, json_path = path, path.with_name(path.name + ".json")
    text_path.parent.mkdir(parents=True, exist_ok=True)
    text_path.write_text(format_coloring_text(coloring))
    json_path.write_text(format_coloring_json(coloring) + "\n")
    return [text_path, json_path]
