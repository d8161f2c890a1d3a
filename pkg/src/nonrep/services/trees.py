"""Edge colorings of complete k-ary trees: constructions, verification and isomorphism."""

import logging
from typing import Optional

from nonrep.models.sequence import Sequence, Square
from nonrep.models.tree import EdgeColoring, TreeShape, walk_path
from nonrep.models.witness import PathWitness
from nonrep.services.kspecial import construct_3k_plus_1, is_k_special, s_n_c
from nonrep.services.sequences import palindrome_free_thue, thue_squarefree
from nonrep.utils.errors import SequenceTooShortError, UncoloredEdgeError

logger = logging.getLogger(__name__)

# Second coloring of T_{2,2} on four colors, edges 2..7.
_TYPE_II_COLORS = (1, 2, 3, 4, 3, 4)

# Second colors on the vertices 8..15 when extending the T_{2,3} coloring to T_{2,4}.
_T24_SECOND_COLORS = (1, 1, 3, 4, 2, 3, 2, 3)


def color_table(coloring: EdgeColoring) -> list[int]:
    """
    Colors indexed by child label, with entries 0 and 1 unused.

    Raises:
        UncoloredEdgeError: If some edge has no color.
    """
    table = [0, 0]
    for v, color in enumerate(coloring.colors, start=2):
        if color is None:
            raise UncoloredEdgeError(v)
        table.append(color)
    return table


def derived_coloring(shape: TreeShape, seq: Sequence) -> EdgeColoring:
    """
    Color the tree diagonally from a sequence.

    The root edges get s_1..s_k from left to right; below an edge colored s_i the
    child edges get s_{i+1}..s_{i+k}. Equivalently the edge to v gets s_j where j
    is the sum of the child positions along the root-to-v path.

    Args:
        shape: The tree.
        seq: A sequence of length at least k * h.

    Returns:
        The coloring, with palette size equal to the alphabet size of ``seq``.

    Raises:
        SequenceTooShortError: If the sequence has fewer than k * h symbols.
    """
    required = shape.k * shape.h
    if len(seq) < required:
        raise SequenceTooShortError(required, len(seq), f"deriving a coloring of {shape}")
    index = [0] * (shape.vertex_count + 1)
    colors = []
    for v in shape.edges():
        index[v] = index[shape.parent(v)] + shape.child_position(v)
        colors.append(seq[index[v] - 1] + 1)
    return EdgeColoring(shape=shape, colors=tuple(colors), palette_size=seq.alphabet_size)


def level_coloring(shape: TreeShape, seq: Sequence) -> EdgeColoring:
    """
    Color the tree level by level from a sequence.

    The k edges below a vertex at depth d get the k copies of s_{d+1}, in child
    order. The coloring is nonrepetitive when the sequence is square-free and
    palindrome-free, which takes 4k colors with ``palindrome_free_thue``.

    Raises:
        SequenceTooShortError: If the sequence has fewer than h symbols.
    """
    if len(seq) < shape.h:
        raise SequenceTooShortError(shape.h, len(seq), f"level-coloring {shape}")
    k = shape.k
    colors: list[int] = []
    for depth in range(1, shape.h + 1):
        symbol = seq[depth - 1]
        colors.extend(symbol * k + shape.child_position(v) for v in shape.level(depth))
    return EdgeColoring(shape=shape, colors=tuple(colors), palette_size=seq.alphabet_size * k)


def find_repetitive_path(coloring: EdgeColoring) -> Optional[PathWitness]:
    """
    Find a path whose color word is a square.

    Pairs of endpoints u < v are scanned in increasing order; a square inside a
    longer path word is found as the sub-path it spans.

    Returns:
        The first repetitive path, or None when the coloring is nonrepetitive.

    Raises:
        UncoloredEdgeError: If some edge has no color.
    """
    shape = coloring.shape
    colors = color_table(coloring)
    depths = shape.depth_table()
    last = shape.vertex_count
    k = shape.k
    for u in range(1, last + 1):
        depth_u = depths[u]
        for v in range(u + 1, last + 1):
            if (depth_u + depths[v]) % 2:
                continue
            path = walk_path(k, u, v, depth_u, depths[v])
            half = len(path) // 2
            if all(colors[path[i]] == colors[path[i + half]] for i in range(half)):
                return PathWitness(
                    u=u,
                    v=v,
                    color_word=tuple(colors[edge] for edge in path),
                    square=Square(start=0, half_length=half),
                )
    return None


def is_nonrepetitive(coloring: EdgeColoring) -> bool:
    """Whether no path of the tree is colored with a square."""
    return find_repetitive_path(coloring) is None


def sv_coloring_h2(k: int) -> EdgeColoring:
    """
    Nonrepetitive coloring of T_{k,2} with floor(3k/2) + 1 colors.

    The root edges get colors 0..k-1. Below the root edge of color i, floor(k/2) + 1
    edges take the colors k, k+1, ... and the remaining ceil(k/2) - 1 take
    i+1, i+2, ... modulo k. Colors are shifted to start at 1.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    shape = TreeShape(k=k, h=2)
    fresh = k // 2 + 1
    cyclic = (k + 1) // 2 - 1
    colors = [i + 1 for i in range(k)]
    for i in range(k):
        below = [k + j for j in range(fresh)] + [(i + j) % k for j in range(1, cyclic + 1)]
        colors.extend(color + 1 for color in below)
    return EdgeColoring(shape=shape, colors=tuple(colors), palette_size=k + fresh)


def figure_coloring(name: str) -> EdgeColoring:
    """
    One of the small reference colorings.

    Args:
        name: "type1" or "type2" (the two colorings of T_{2,2} on four colors) or
            "figure2" (the coloring of T_{2,3} derived from 1, 2, 3, 4, 1, 2).

    Raises:
        ValueError: For an unknown name.
    """
    if name == "type1":
        return derived_coloring(TreeShape(k=2, h=2), Sequence.from_external([1, 2, 3, 4]))
    if name == "type2":
        return EdgeColoring(shape=TreeShape(k=2, h=2), colors=_TYPE_II_COLORS, palette_size=4)
    if name == "figure2":
        return derived_coloring(TreeShape(k=2, h=3), s_n_c(4, 2))
    raise ValueError(f"unknown reference coloring {name!r}; expected type1, type2 or figure2")


def extend_t24_example() -> EdgeColoring:
    """
    A nonrepetitive 5-coloring of T_{2,4} extending the T_{2,3} reference coloring.

    Each vertex v = 8..15 gets color 5 on its left child edge and the next of
    1, 1, 3, 4, 2, 3, 2, 3 on its right child edge.
    """
    base = figure_coloring("figure2")
    colors = list(base.colors)
    for second in _T24_SECOND_COLORS:
        colors.extend((5, second))
    return EdgeColoring(shape=TreeShape(k=2, h=4), colors=tuple(colors), palette_size=5)


def verify_theorem2_forward(seq: Sequence, k: int, h: int) -> bool:
    """
    Whether a repetitive path in the derived coloring implies a k-bad sequence.

    Derived colorings of k-special words are nonrepetitive, so this must hold for
    every input.

    Raises:
        SequenceTooShortError: If the sequence has fewer than k * h symbols.
    """
    coloring = derived_coloring(TreeShape(k=k, h=h), seq)
    if find_repetitive_path(coloring) is None:
        return True
    return not is_k_special(seq, k)


def corollary_small_h(k: int, h: int) -> EdgeColoring:
    """
    Nonrepetitive coloring of T_{k,h} with at most ceil((h+1)k/2) colors.

    For h = 3 it is derived from S_{2k,k}; for larger h from S_{n,n-k} with
    n = ceil((h+1)k/2), which is long enough since 2n - k >= hk.

    Raises:
        ValueError: If h < 3 or k < 1.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if h < 3:
        raise ValueError(f"corollary colorings need h >= 3, got {h}")
    shape = TreeShape(k=k, h=h)
    if h == 3:
        return derived_coloring(shape, s_n_c(2 * k, k))
    n = -(-(h + 1) * k // 2)
    return derived_coloring(shape, s_n_c(n, n - k))


def compact(coloring: EdgeColoring) -> EdgeColoring:
    """Rename the colors that occur to 1, 2, ... in order of first use."""
    renaming: dict[int, int] = {}
    colors = []
    for color in coloring.colors:
        if color is None:
            colors.append(None)
            continue
        colors.append(renaming.setdefault(color, len(renaming) + 1))
    return EdgeColoring(shape=coloring.shape, colors=tuple(colors), palette_size=len(renaming))


def best_construction(shape: TreeShape) -> tuple[str, EdgeColoring]:
    """
    The known nonrepetitive coloring of the tree with the fewest colors.

    Returns:
        A provenance label and the compacted coloring.
    """
    k, h = shape.k, shape.h
    candidates: list[tuple[str, EdgeColoring]] = []
    if h == 1:
        candidates.append(("star", derived_coloring(shape, Sequence.of(range(k)))))
    if k == 1:
        candidates.append(("thue-path", derived_coloring(shape, thue_squarefree(h))))
    if h == 2:
        candidates.append(("sv", sv_coloring_h2(k)))
    if h >= 3:
        candidates.append(("corollary-small-h", corollary_small_h(k, h)))
    candidates.append(("3k+1", derived_coloring(shape, construct_3k_plus_1(k, k * h))))
    compacted = [(label, compact(coloring)) for label, coloring in candidates]
    return min(compacted, key=lambda item: item[1].palette_size)


def palindrome_free_level_coloring(shape: TreeShape) -> EdgeColoring:
    """The level coloring from the palindrome-free word; 4k colors."""
    return level_coloring(shape, palindrome_free_thue(shape.h))


def canonical_word(k: int, last: int, colors: list[int]) -> tuple[int, ...]:
    """
    Least breadth-first color word over sibling permutations and color renamings.

    ``colors`` is indexed by child label (as from ``color_table``). Children are
    placed one new label at a time; the renamed color of a candidate is fixed once
    the prefix is fixed, so only candidates tied at the minimum need branching.
    """
    order = [0] * (last + 1)
    order[1] = 1
    placed = [False] * (last + 1)
    rename: dict[int, int] = {}
    word: list[int] = []
    less: list[bool] = []
    best: Optional[list[int]] = None

    def options(t: int) -> list[int]:
        parent = order[(t - 2) // k + 1]
        free = [c for c in range(k * (parent - 1) + 2, k * parent + 2) if not placed[c]]
        values = [rename.get(colors[c], len(rename) + 1) for c in free]
        low = min(values)
        return [c for c, value in zip(free, values, strict=True) if value == low]

    if last < 2:
        return ()
    # frame: candidates, next index, (placed child, color added to rename) or None
    frames: list[list] = [[options(2), 0, None]]
    while frames:
        frame = frames[-1]
        if frame[2] is not None:
            child, added = frame[2]
            placed[child] = False
            word.pop()
            less.pop()
            if added is not None:
                del rename[added]
            frame[2] = None
        candidates, index = frame[0], frame[1]
        if index >= len(candidates):
            frames.pop()
            continue
        frame[1] = index + 1
        child = candidates[index]
        t = len(frames) + 1
        color = colors[child]
        added = None
        if color not in rename:
            rename[color] = len(rename) + 1
            added = color
        value = rename[color]

        before = less[-1] if less else best is None
        if before:
            now = True
        else:
            assert best is not None
            target = best[t - 2]
            if value > target:
                if added is not None:
                    del rename[added]
                continue
            now = value < target

        placed[child] = True
        order[t] = child
        word.append(value)
        less.append(now)
        frame[2] = (child, added)
        if t == last:
            if now:
                best = list(word)
                less = [False] * len(less)
        else:
            frames.append([options(t + 1), 0, None])
    assert best is not None
    return tuple(best)


def canonical_form(coloring: EdgeColoring) -> tuple[int, ...]:
    """
    Canonical form under tree automorphisms composed with color permutations.

    Raises:
        UncoloredEdgeError: If some edge has no color.
    """
    shape = coloring.shape
    return canonical_word(shape.k, shape.vertex_count, color_table(coloring))


def are_isomorphic(first: EdgeColoring, second: EdgeColoring) -> bool:
    """Whether two colorings of the same tree differ by an automorphism and a renaming."""
    if first.shape != second.shape:
        return False
    return canonical_form(first) == canonical_form(second)
