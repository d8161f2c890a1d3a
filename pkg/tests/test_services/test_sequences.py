"""Tests for square-free and palindrome-free words."""

import random

import pytest

from nonrep.models.sequence import Sequence, Square
from nonrep.services.sequences import (
    block_expand,
    find_factor,
    find_palindrome,
    find_square,
    five_letter_iterates,
    intermediate_word,
    palindrome_free_thue,
    thue_aba_bab_free,
    thue_squarefree,
)
from tests.oracles import naive_has_square

THUE_64 = "1231321232131231321312321231321232131232123132131231321232131231"
ABA_BAB_FREE_90 = (
    "cabcbacabcacbacabcbacbcabcbacabcacbcabcbacbcacbacabcbacbcabcbacabcacbacabcbacbcacbacabcacb"
)


def _word(text: str) -> Sequence:
    return Sequence.from_external([int(letter) for letter in text])


class TestFindSquare:
    """Test square detection."""

    def test_square_free_word(self) -> None:
        """Test that a square-free word has no square."""
        assert find_square(_word("1231")) is None

    def test_least_start_then_least_half(self) -> None:
        """Test the order in which squares are reported."""
        assert find_square(_word("1212")) == Square(start=0, half_length=2)
        assert find_square(_word("312323")) == Square(start=2, half_length=2)
        assert find_square(_word("3112")) == Square(start=1, half_length=1)

    def test_displayed_prefixes_contain_squares(self) -> None:
        """Test that 1,2,3,2,3,1 and 1,2,4,3,2,4,3,1,4 are not square-free."""
        assert find_square(_word("123231")) == Square(start=1, half_length=2)
        assert find_square(_word("124324314")) == Square(start=1, half_length=3)

    def test_short_words(self) -> None:
        """Test the empty word and single letters."""
        assert find_square(Sequence.of([])) is None
        assert find_square(Sequence.of([0])) is None

    def test_agrees_with_naive_oracle(self, rng: random.Random) -> None:
        """Test against a brute-force scan on random words."""
        for _ in range(1000):
            length = rng.randint(0, 60)
            alphabet = rng.randint(2, 5)
            symbols = tuple(rng.randrange(alphabet) for _ in range(length))
            square = find_square(Sequence.of(symbols, alphabet))

            assert (square is not None) == naive_has_square(symbols)
            if square is not None:
                start, r = square.start, square.half_length
                assert symbols[start : start + r] == symbols[start + r : start + 2 * r]


class TestFindPalindrome:
    """Test palindrome detection."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [("1231", None), ("121", (0, 3)), ("3112", (1, 2)), ("412214", (0, 6)), ("12332", (1, 4))],
    )
    def test_find_palindrome(self, text: str, expected: tuple[int, int] | None) -> None:
        """Test the least start, then least length palindrome."""
        assert find_palindrome(_word(text)) == expected


class TestFindFactor:
    """Test factor search."""

    def test_first_occurrence(self) -> None:
        """Test that the first start is returned."""
        assert find_factor(_word("3121212"), (0, 1, 0)) == 1

    def test_missing_factor(self) -> None:
        """Test that an absent factor gives None."""
        assert find_factor(_word("123123"), (0, 1, 0)) is None


class TestThueWords:
    """Test the square-free generators."""

    def test_ternary_prefix(self) -> None:
        """Test the first 64 symbols of the square-free ternary word."""
        word = thue_squarefree(64)

        assert "".join(str(value) for value in word.to_external()) == THUE_64
        assert word.alphabet_size == 3

    def test_ternary_word_is_square_free(self) -> None:
        """Test a long prefix for squares."""
        assert find_square(thue_squarefree(600)) is None

    def test_length_zero(self) -> None:
        """Test the empty prefix."""
        assert len(thue_squarefree(0)) == 0

    def test_negative_length_is_rejected(self) -> None:
        """Test parameter validation."""
        with pytest.raises(ValueError, match="length"):
            thue_squarefree(-1)

    @pytest.mark.parametrize(("short", "long"), [(1, 2), (10, 64), (99, 100), (250, 777)])
    def test_prefixes_are_stable(self, short: int, long: int) -> None:
        """Test that a shorter request is a prefix of a longer one."""
        assert thue_squarefree(long).prefix(short) == thue_squarefree(short)

    def test_palindrome_free_prefix(self) -> None:
        """Test the 4-letter word with 4 at every third position."""
        assert palindrome_free_thue(9).to_external() == [1, 2, 4, 3, 1, 4, 3, 2, 4]

    def test_palindrome_free_word_has_no_squares_or_palindromes(self) -> None:
        """Test both avoidance properties on a long prefix."""
        word = palindrome_free_thue(300)

        assert word.alphabet_size == 4
        assert find_square(word) is None
        assert find_palindrome(word) is None

    def test_palindrome_free_word_without_fours(self) -> None:
        """Test that deleting every 4 gives back the ternary square-free word."""
        word = palindrome_free_thue(300)
        kept = [symbol for symbol in word.symbols if symbol != 3]

        assert Sequence.of(kept, 3) == thue_squarefree(len(kept))


class TestAbaBabFreeWord:
    """Test the square-free word avoiding aba and bab."""

    def test_five_letter_iterates(self) -> None:
        """Test the first iterates of the 5-letter substitution."""
        assert five_letter_iterates(3) == ["B", "BDC", "BDCBEACBDAE"]

    def test_intermediate_word(self) -> None:
        """Test the translation to the x/y/z/u word."""
        assert intermediate_word("BDCBEACBDAE") == "zuzxuzuyzuzxyzuyxuzuyzuzxuzuyxuzxy"

    def test_first_90_letters(self) -> None:
        """Test the displayed 90-letter prefix."""
        word = thue_aba_bab_free(90)
        letters = "".join("abc"[symbol] for symbol in word.symbols)

        assert letters == ABA_BAB_FREE_90

    def test_long_prefix_avoids_squares_and_aba_bab(self) -> None:
        """Test the avoidance properties on a long prefix."""
        word = thue_aba_bab_free(5000)

        assert find_square(word) is None
        assert find_factor(word, (0, 1, 0)) is None
        assert find_factor(word, (1, 0, 1)) is None


class TestBlockExpand:
    """Test block expansion."""

    def test_blocks(self) -> None:
        """Test that symbol t becomes tw, ..., tw + w - 1."""
        expanded = block_expand(Sequence.from_external([1, 3, 2], 3), 2)

        assert expanded.to_external() == [1, 2, 5, 6, 3, 4]
        assert expanded.alphabet_size == 6

    def test_width_one_is_identity(self) -> None:
        """Test that w = 1 leaves the word unchanged."""
        word = thue_squarefree(10)

        assert block_expand(word, 1) == word

    def test_width_must_be_positive(self) -> None:
        """Test parameter validation."""
        with pytest.raises(ValueError, match="w"):
            block_expand(thue_squarefree(3), 0)

    def test_squares_survive_expansion_both_ways(self, rng: random.Random) -> None:
        """Test that the expansion has a square exactly when the word has one."""
        for _ in range(300):
            symbols = [rng.randrange(3) for _ in range(rng.randint(0, 12))]
            word = Sequence.of(symbols, 3)
            w = rng.randint(1, 3)

            assert (find_square(block_expand(word, w)) is None) == (find_square(word) is None)
