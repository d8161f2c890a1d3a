"""Tests for tree colorings, their verification and isomorphism."""

import random

import pytest

from nonrep.models.sequence import Sequence
from nonrep.models.tree import EdgeColoring, TreeShape
from nonrep.services.kspecial import construct_3k_plus_1, s_n_c
from nonrep.services.sequences import palindrome_free_thue, thue_squarefree
from nonrep.services.trees import (
    are_isomorphic,
    best_construction,
    canonical_form,
    color_table,
    compact,
    corollary_small_h,
    derived_coloring,
    extend_t24_example,
    figure_coloring,
    find_repetitive_path,
    is_nonrepetitive,
    level_coloring,
    palindrome_free_level_coloring,
    sv_coloring_h2,
    verify_theorem2_forward,
)
from nonrep.utils.errors import SequenceTooShortError, UncoloredEdgeError
from tests.oracles import naive_repetitive


class TestDerivedColoring:
    """Test colorings derived from sequences."""

    def test_type_one_coloring(self) -> None:
        """Test the coloring of T_{2,2} derived from 1 2 3 4."""
        coloring = derived_coloring(TreeShape(k=2, h=2), Sequence.from_external([1, 2, 3, 4]))

        assert coloring.colors == (1, 2, 2, 3, 3, 4)
        assert coloring.palette_size == 4

    def test_rightmost_path_uses_kh_symbols(self) -> None:
        """Test that the last edge takes symbol k * h."""
        shape = TreeShape(k=3, h=2)
        coloring = derived_coloring(shape, Sequence.of(range(6)))

        assert coloring.color(shape.vertex_count) == 6

    def test_sequence_too_short(self) -> None:
        """Test that fewer than k * h symbols are refused."""
        with pytest.raises(SequenceTooShortError, match="need 6"):
            derived_coloring(TreeShape(k=2, h=3), Sequence.of(range(5)))

    @pytest.mark.parametrize(("k", "h"), [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)])
    def test_repetitive_path_implies_k_bad(self, k: int, h: int, rng: random.Random) -> None:
        """Test on random words that a repetitive derived coloring comes from a non-special word."""
        for _ in range(500):
            alphabet = rng.randint(2, 2 * k + 2)
            seq = Sequence.of([rng.randrange(alphabet) for _ in range(k * h)], alphabet)

            assert verify_theorem2_forward(seq, k, h)

    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
    def test_s_2k_k_on_height_three(self, k: int) -> None:
        """Test that S_{2k,k} gives a nonrepetitive coloring of T_{k,3}."""
        assert is_nonrepetitive(derived_coloring(TreeShape(k=k, h=3), s_n_c(2 * k, k)))

    @pytest.mark.parametrize(("k", "h"), [(1, 5), (2, 3), (2, 5), (3, 3)])
    def test_3k_plus_1_colorings(self, k: int, h: int) -> None:
        """Test colorings derived from the 3k + 1 construction."""
        shape = TreeShape(k=k, h=h)
        coloring = derived_coloring(shape, construct_3k_plus_1(k, k * h))

        assert coloring.palette_size == 3 * k + 1
        assert is_nonrepetitive(coloring)

    @pytest.mark.slow
    @pytest.mark.parametrize(("k", "h"), [(2, 4), (3, 4), (3, 5)])
    def test_3k_plus_1_colorings_larger(self, k: int, h: int) -> None:
        """Test the 3k + 1 construction on larger trees."""
        shape = TreeShape(k=k, h=h)

        assert is_nonrepetitive(derived_coloring(shape, construct_3k_plus_1(k, k * h)))


class TestRepetitivePaths:
    """Test the path verifier."""

    def test_reference_colorings_are_nonrepetitive(self) -> None:
        """Test the small reference colorings."""
        for name in ("type1", "type2", "figure2"):
            assert is_nonrepetitive(figure_coloring(name)), name

    def test_finds_square_through_root(self) -> None:
        """Test a square 1 2 1 2 on a leaf-to-leaf path."""
        coloring = EdgeColoring(
            shape=TreeShape(k=2, h=2), colors=(2, 1, 1, 3, 2, 4), palette_size=4
        )

        witness = find_repetitive_path(coloring)

        assert witness is not None
        assert witness.color_word[: len(witness.color_word) // 2] == witness.color_word[
            len(witness.color_word) // 2 :
        ]

    def test_adjacent_equal_colors(self) -> None:
        """Test that an improper coloring is repetitive."""
        coloring = EdgeColoring(shape=TreeShape(k=2, h=1), colors=(1, 1), palette_size=1)

        witness = find_repetitive_path(coloring)

        assert witness is not None
        assert (witness.u, witness.v, witness.color_word) == (2, 3, (1, 1))

    def test_uncolored_edge(self) -> None:
        """Test that verification needs every edge colored."""
        coloring = EdgeColoring(shape=TreeShape(k=2, h=1), colors=(1, None), palette_size=2)

        with pytest.raises(UncoloredEdgeError):
            find_repetitive_path(coloring)

    def test_agrees_with_naive_oracle(self, rng: random.Random) -> None:
        """Test against a walk over parent pointers on random colorings."""
        for _ in range(200):
            shape = TreeShape(k=rng.randint(1, 3), h=rng.randint(1, 3))
            palette = rng.randint(2, 7)
            colors = tuple(rng.randint(1, palette) for _ in shape.edges())
            coloring = EdgeColoring(shape=shape, colors=colors, palette_size=palette)

            expected = naive_repetitive(shape, color_table(coloring))

            assert (find_repetitive_path(coloring) is not None) == expected

    def test_oracle_agreement_near_valid_colorings(self, rng: random.Random) -> None:
        """Test single-edge changes of a nonrepetitive coloring."""
        base = figure_coloring("figure2")
        for _ in range(100):
            colors = list(base.colors)
            colors[rng.randrange(len(colors))] = rng.randint(1, 4)
            coloring = EdgeColoring(shape=base.shape, colors=tuple(colors), palette_size=4)

            expected = naive_repetitive(base.shape, color_table(coloring))

            assert is_nonrepetitive(coloring) == (not expected)


class TestConstructions:
    """Test the coloring constructions."""

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    def test_height_two(self, k: int) -> None:
        """Test the floor(3k/2) + 1 coloring of T_{k,2}."""
        coloring = sv_coloring_h2(k)

        assert coloring.palette_size == 3 * k // 2 + 1
        assert coloring.colors_used() == set(range(1, 3 * k // 2 + 2))
        assert is_nonrepetitive(coloring)

    def test_t24_extension(self) -> None:
        """Test the 5-coloring of T_{2,4} built on the T_{2,3} coloring."""
        coloring = extend_t24_example()

        assert coloring.restrict(3) == figure_coloring("figure2").model_copy(
            update={"palette_size": 5}
        )
        assert coloring.palette_size == 5
        assert is_nonrepetitive(coloring)

    @pytest.mark.parametrize(("k", "h"), [(1, 3), (1, 6), (2, 3), (2, 4), (2, 6), (3, 3), (3, 4)])
    def test_small_height_corollary(self, k: int, h: int) -> None:
        """Test the ceil((h+1)k/2) coloring."""
        coloring = compact(corollary_small_h(k, h))

        assert coloring.palette_size <= -(-(h + 1) * k // 2)
        assert is_nonrepetitive(coloring)

    @pytest.mark.slow
    @pytest.mark.parametrize("h", [5, 6])
    def test_small_height_corollary_ternary(self, h: int) -> None:
        """Test the corollary coloring of T_{3,5} and T_{3,6}."""
        assert is_nonrepetitive(corollary_small_h(3, h))

    def test_corollary_needs_height_three(self) -> None:
        """Test that h < 3 is refused."""
        with pytest.raises(ValueError, match="h >= 3"):
            corollary_small_h(2, 2)

    @pytest.mark.parametrize(("k", "h"), [(1, 4), (2, 3), (2, 4), (3, 3)])
    def test_level_coloring(self, k: int, h: int) -> None:
        """Test the 4k level coloring from the palindrome-free word."""
        coloring = palindrome_free_level_coloring(TreeShape(k=k, h=h))

        assert coloring.palette_size == 4 * k
        assert is_nonrepetitive(coloring)

    def test_level_coloring_needs_palindrome_free_word(self) -> None:
        """Test that the square-free palindrome 1 2 1 gives a repetitive level coloring."""
        shape = TreeShape(k=2, h=3)

        assert not is_nonrepetitive(level_coloring(shape, Sequence.from_external([1, 2, 1])))
        assert is_nonrepetitive(level_coloring(shape, palindrome_free_thue(3)))

    def test_level_coloring_colors(self) -> None:
        """Test that each level repeats its symbol's block in child order."""
        coloring = level_coloring(TreeShape(k=2, h=2), Sequence.from_external([1, 2]))

        assert coloring.colors == (1, 2, 3, 4, 3, 4)
        assert coloring.palette_size == 4

    def test_level_coloring_too_short(self) -> None:
        """Test that the word must cover every level."""
        with pytest.raises(SequenceTooShortError):
            level_coloring(TreeShape(k=2, h=3), thue_squarefree(2))

    @pytest.mark.parametrize(
        ("k", "h", "label", "palette"),
        [(1, 1, "star", 1), (3, 1, "star", 3), (2, 2, "sv", 4), (5, 2, "sv", 8), (2, 4, "corollary-small-h", 5)],
    )
    def test_best_construction(self, k: int, h: int, label: str, palette: int) -> None:
        """Test the construction chosen for upper bounds."""
        chosen, coloring = best_construction(TreeShape(k=k, h=h))

        assert chosen == label
        assert coloring.palette_size == palette
        assert is_nonrepetitive(coloring)

    def test_compact_renames_in_order_of_first_use(self) -> None:
        """Test color compaction."""
        coloring = EdgeColoring(shape=TreeShape(k=2, h=1), colors=(7, 3), palette_size=7)

        assert compact(coloring).colors == (1, 2)
        assert compact(coloring).palette_size == 2


class TestIsomorphism:
    """Test canonical forms of colorings."""

    def test_type_one_and_two_differ(self) -> None:
        """Test that the two 4-colorings of T_{2,2} are not isomorphic."""
        assert not are_isomorphic(figure_coloring("type1"), figure_coloring("type2"))

    def test_sibling_swap_and_renaming(self) -> None:
        """Test that swapping root subtrees and renaming colors preserves the form."""
        type1 = figure_coloring("type1")
        swapped = EdgeColoring(shape=type1.shape, colors=(2, 1, 3, 4, 2, 3), palette_size=4)
        renamed = EdgeColoring(shape=type1.shape, colors=(4, 3, 3, 1, 1, 2), palette_size=4)

        assert are_isomorphic(type1, swapped)
        assert are_isomorphic(type1, renamed)

    def test_canonical_form_is_least_word(self) -> None:
        """Test the canonical form of the type I coloring."""
        assert canonical_form(figure_coloring("type1")) == (1, 2, 2, 3, 3, 4)

    def test_different_shapes(self) -> None:
        """Test that colorings of different trees are never isomorphic."""
        assert not are_isomorphic(figure_coloring("type1"), figure_coloring("figure2"))

    def test_unknown_figure(self) -> None:
        """Test that unknown reference names are refused."""
        with pytest.raises(ValueError, match="unknown"):
            figure_coloring("figure9")
