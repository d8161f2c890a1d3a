"""Square-free, palindrome-free and aba/bab-free words, and block expansion."""

import logging
from collections.abc import Sequence as SymbolList
from typing import Optional

import numpy as np

from nonrep.models.sequence import Sequence, Square

logger = logging.getLogger(__name__)

# Thue's ternary morphism a -> abc, b -> ac, c -> b; its fixed point is square-free.
_TERNARY_MORPHISM: dict[int, tuple[int, ...]] = {0: (0, 1, 2), 1: (0, 2), 2: (1,)}

_FIVE_LETTER_MORPHISM = {
    "A": "BDAEAC",
    "B": "BDC",
    "C": "BDAE",
    "D": "BEAC",
    "E": "BEAE",
}
_FIVE_LETTER_BLOCKS = {"A": "zuyxu", "B": "zu", "C": "zuy", "D": "zxu", "E": "zxy"}
_XYZU_BLOCKS = {"x": "ca", "y": "cb", "z": "cab", "u": "cba"}
_ABC = {"a": 0, "b": 1, "c": 2}


def first_square(symbols: SymbolList[int]) -> Optional[tuple[int, int]]:
    """
    Least (start, half_length) of a square factor, ordered by start then half length.

    For each half length r the comparison s[i] == s[i+r] is vectorized; a square of
    half length r starts wherever r consecutive comparisons hold.
    """
    n = len(symbols)
    if n < 2:
        return None
    word = np.asarray(symbols, dtype=np.int64)
    best: Optional[tuple[int, int]] = None
    for r in range(1, n // 2 + 1):
        last_start = n - 2 * r
        if best is not None:
            # a later square with the same start would be longer
            last_start = min(last_start, best[0] - 1)
        if last_start < 0:
            continue
        matches = word[: n - r] == word[r:]
        running = np.concatenate(([0], np.cumsum(matches, dtype=np.int64)))
        window = running[r : r + last_start + 1] - running[: last_start + 1]
        hits = np.flatnonzero(window == r)
        if hits.size:
            best = (int(hits[0]), r)
    return best


def find_square(seq: Sequence) -> Optional[Square]:
    """
    Find the square with the least start, then the least half length.

    Args:
        seq: The word to scan.

    Returns:
        The square, or None when the word is square-free.
    """
    found = first_square(seq.symbols)
    if found is None:
        return None
    return Square(start=found[0], half_length=found[1])


def find_palindrome(seq: Sequence) -> Optional[tuple[int, int]]:
    """
    Find a palindromic factor of length at least 2.

    Returns:
        (start, length) with the least start, then the least length; None if the
        word is palindrome-free.
    """
    symbols = seq.symbols
    n = len(symbols)
    for start in range(n - 1):
        first = symbols[start]
        for end in range(start + 1, n):
            if symbols[end] != first:
                continue
            lo, hi = start + 1, end - 1
            while lo < hi and symbols[lo] == symbols[hi]:
                lo += 1
                hi -= 1
            if lo >= hi:
                return start, end - start + 1
    return None


def find_factor(seq: Sequence, pattern: SymbolList[int]) -> Optional[int]:
    """First start index of a contiguous occurrence of ``pattern`` (0-based symbols)."""
    needle = tuple(pattern)
    width = len(needle)
    symbols = seq.symbols
    for start in range(len(symbols) - width + 1):
        if symbols[start : start + width] == needle:
            return start
    return None


def thue_squarefree(length: int) -> Sequence:
    """
    Prefix of the square-free fixed point of a -> abc, b -> ac, c -> b.

    Args:
        length: Number of symbols; the word over {1, 2, 3} starts 1 2 3 1 3 2.

    Returns:
        A square-free word over 3 symbols.
    """
    if length < 0:
        raise ValueError(f"length must be non-negative, got {length}")
    word = [0]
    while len(word) < length:
        word = [image for symbol in word for image in _TERNARY_MORPHISM[symbol]]
    return Sequence(symbols=tuple(word[:length]), alphabet_size=3)


def palindrome_free_thue(length: int) -> Sequence:
    """
    Insert a fourth symbol as every third symbol of the square-free ternary word.

    Output positions 3, 6, 9, ... (1-based) hold symbol 4; the rest read the ternary
    word in order. The result is square-free and palindrome-free.
    """
    if length < 0:
        raise ValueError(f"length must be non-negative, got {length}")
    base = thue_squarefree(length - length // 3).symbols
    symbols: list[int] = []
    consumed = 0
    for position in range(length):
        if position % 3 == 2:
            symbols.append(3)
        else:
            symbols.append(base[consumed])
            consumed += 1
    return Sequence(symbols=tuple(symbols), alphabet_size=4)


def five_letter_iterates(count: int) -> list[str]:
    """The first ``count`` words obtained by iterating the 5-letter substitution from B."""
    words: list[str] = []
    word = "B"
    for _ in range(count):
        words.append(word)
        word = "".join(_FIVE_LETTER_MORPHISM[letter] for letter in word)
    return words


def intermediate_word(five_letter_word: str) -> str:
    """Translate a 5-letter word into the x/y/z/u word (A=zuyxu, B=zu, ...)."""
    return "".join(_FIVE_LETTER_BLOCKS[letter] for letter in five_letter_word)


def _abc_word(five_letter_word: str) -> str:
    return "".join(_XYZU_BLOCKS[letter] for letter in intermediate_word(five_letter_word))


def thue_aba_bab_free(length: int) -> Sequence:
    """
    Prefix of the square-free word over {a, b, c} with no factor aba or bab.

    The 5-letter substitution is iterated from B until the translated word is long
    enough; a, b, c are encoded as 1, 2, 3 and the word starts with c.
    """
    if length < 0:
        raise ValueError(f"length must be non-negative, got {length}")
    word = "B"
    abc = _abc_word(word)
    while len(abc) < length:
        word = "".join(_FIVE_LETTER_MORPHISM[letter] for letter in word)
        abc = _abc_word(word)
    logger.debug("aba/bab-free word of length %d from a %d-letter iterate", length, len(word))
    return Sequence(symbols=tuple(_ABC[letter] for letter in abc[:length]), alphabet_size=3)


def block_expand(seq: Sequence, w: int) -> Sequence:
    """
    Replace each symbol t by the block t*w, t*w + 1, ..., t*w + w - 1.

    Args:
        seq: The word to expand.
        w: Block width.

    Returns:
        A word over w * alphabet_size symbols, w times longer.

    Raises:
        ValueError: If w < 1.
    """
    if w < 1:
        raise ValueError(f"block width w must be at least 1, got {w}")
    symbols = tuple(symbol * w + offset for symbol in seq.symbols for offset in range(w))
    return Sequence(symbols=symbols, alphabet_size=seq.alphabet_size * w)
