"""Word constructions, checkers and exhaustive searches."""

from nonrep.services.checkpoint import CheckpointLog
from nonrep.services.chromatic_search import (
    ColoringSearch,
    chromatic_index_exact,
    thue_chromatic_index,
)
from nonrep.services.fk_search import BranchExplorer, default_length_cap, search_fk
from nonrep.services.kspecial import (
    check_witness,
    construct_3k_plus_1,
    construct_3k_plus_2,
    corollary_3k3_sequence,
    find_k_bad,
    is_k_special,
    min_distance_criterion,
    palindrome_free_block_sequence,
    s_n_c,
    strange_form_sequence,
)
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
from nonrep.services.table import format_table_tsv, pi_table
from nonrep.services.trees import (
    are_isomorphic,
    best_construction,
    canonical_form,
    corollary_small_h,
    derived_coloring,
    extend_t24_example,
    figure_coloring,
    find_repetitive_path,
    is_nonrepetitive,
    level_coloring,
    sv_coloring_h2,
    verify_theorem2_forward,
)

__all__ = [
    "BranchExplorer",
    "CheckpointLog",
    "ColoringSearch",
    "are_isomorphic",
    "best_construction",
    "block_expand",
    "canonical_form",
    "check_witness",
    "chromatic_index_exact",
    "construct_3k_plus_1",
    "construct_3k_plus_2",
    "corollary_3k3_sequence",
    "corollary_small_h",
    "default_length_cap",
    "derived_coloring",
    "extend_t24_example",
    "figure_coloring",
    "find_factor",
    "find_k_bad",
    "find_palindrome",
    "find_repetitive_path",
    "find_square",
    "five_letter_iterates",
    "format_table_tsv",
    "intermediate_word",
    "is_k_special",
    "is_nonrepetitive",
    "level_coloring",
    "min_distance_criterion",
    "palindrome_free_block_sequence",
    "palindrome_free_thue",
    "pi_table",
    "s_n_c",
    "search_fk",
    "strange_form_sequence",
    "sv_coloring_h2",
    "thue_aba_bab_free",
    "thue_chromatic_index",
    "thue_squarefree",
    "verify_theorem2_forward",
]
