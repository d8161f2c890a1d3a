"""
k-bad index sequences, k-special words and the constructions built from them.

An index sequence i_1..i_{2r} is k-bad for a word s when s[i_1..i_r] = s[i_{r+1}..i_{2r}]
as words, the indices fall strictly to a valley i_m (1 < m <= 2r) and then rise
strictly, consecutive indices differ by at most k, and, when m < 2r, the first step
after the valley is smaller than k. A word with no k-bad index sequence is k-special.

Existence is decided in polynomial time. A witness is a walk that goes down and then
up; pairing position j with position j + r splits it into two synchronized walks of
matched symbols that meet at the valley. Each family of such walks is tabulated once
as bitmasks of reachable end positions, then the two halves are joined.
"""

import logging
from collections import defaultdict
from collections.abc import Sequence as SymbolList
from typing import Optional

from nonrep.models.sequence import Sequence
from nonrep.models.witness import KBadWitness
from nonrep.services.sequences import (
    block_expand,
    palindrome_free_thue,
    thue_aba_bab_free,
    thue_squarefree,
)

logger = logging.getLogger(__name__)

_DOWN = 0
_UP = 1
_Move = tuple[int, int]


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")


def _positions_by_symbol(symbols: SymbolList[int]) -> dict[int, list[int]]:
    positions: dict[int, list[int]] = defaultdict(list)
    for index, symbol in enumerate(symbols):
        positions[symbol].append(index)
    return positions


def _window(lo: int, hi: int) -> int:
    """Bitmask of the positions lo..hi inclusive (clipped at 0)."""
    lo = max(lo, 0)
    if hi < lo:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << lo


def _bits(mask: int) -> list[int]:
    found = []
    while mask:
        low = mask & -mask
        found.append(low.bit_length() - 1)
        mask ^= low
    return found


def _walk_ends(
    symbols: SymbolList[int],
    k: int,
    by_symbol: dict[int, list[int]],
    a_dir: int,
    b_dir: int,
    collect_b: bool,
    anchor: Optional[int] = None,
) -> tuple[dict[tuple[int, int], int], dict[tuple[int, int], int]]:
    """
    For every matched pair (a, b), the set of end positions of paired walks.

    Both components move by 1..k per step in the given directions and the two
    positions always carry equal symbols. Zero steps are allowed, so the start
    contributes itself. The collected end is b when ``collect_b`` else a.

    The second table keeps only the walks whose other component ends on
    ``anchor``; it stays empty without an anchor.
    """
    n = len(symbols)
    order = range(n - 1, -1, -1) if a_dir > 0 else range(n)
    ends: dict[tuple[int, int], int] = {}
    anchored: dict[tuple[int, int], int] = {}
    for a in order:
        partners = by_symbol[symbols[a]]
        for b in partners:
            mask = 1 << (b if collect_b else a)
            hit = mask if (a if collect_b else b) == anchor else 0
            for da in range(1, k + 1):
                na = a + a_dir * da
                if na < 0 or na >= n:
                    break
                wanted = symbols[na]
                for db in range(1, k + 1):
                    nb = b + b_dir * db
                    if nb < 0 or nb >= n:
                        break
                    if symbols[nb] == wanted:
                        mask |= ends[(na, nb)]
                        if anchor is not None:
                            hit |= anchored[(na, nb)]
            ends[(a, b)] = mask
            if anchor is not None:
                anchored[(a, b)] = hit
    return ends, anchored


def _step_ends(
    ends: dict[tuple[int, int], int],
    symbols: SymbolList[int],
    a: int,
    b: int,
    a_dir: int,
    b_dir: int,
    a_max: int,
    b_max: int,
) -> int:
    """Union of ``ends`` over the matched pairs one step away from (a, b)."""
    n = len(symbols)
    mask = 0
    for da in range(1, a_max + 1):
        na = a + a_dir * da
        if na < 0 or na >= n:
            break
        wanted = symbols[na]
        for db in range(1, b_max + 1):
            nb = b + b_dir * db
            if nb < 0 or nb >= n:
                break
            if symbols[nb] == wanted:
                mask |= ends[(na, nb)]
    return mask


def _rises_into(joins: int, turns: int, valley: Optional[int], k: int) -> bool:
    """Whether some i_{r+1} in ``joins`` closely follows an i_r in ``turns`` or at the valley."""
    if valley is not None and joins & _window(valley + 1, valley + k - 1):
        return True
    return any(joins & _window(y + 1, y + k) for y in _bits(turns))


def _falls_into(joins: int, turns: int, k: int) -> bool:
    """Whether some i_{r+1} in ``joins`` lies at most k below an i_r in ``turns``."""
    return any(joins & _window(y - k, y - 1) for y in _bits(turns))


def _has_k_bad(symbols: SymbolList[int], k: int, anchor: Optional[int]) -> bool:
    """
    Search k-bad index sequences; with an anchor, only those whose largest index is it.

    The largest index of a witness is i_1 or i_{2r}. In each half-split below, i_1 is the
    free end of the walk that holds the first half and i_{2r} the free end of the other,
    so an anchored search pairs one anchored table with one unrestricted table.
    """
    n = len(symbols)
    if n < 2:
        return False
    by_symbol = _positions_by_symbol(symbols)

    # Valley in the first half: start at the pair (i_m, i_{m+r}).
    left_and_back, left_at = _walk_ends(symbols, k, by_symbol, +1, -1, True, anchor)
    right_both, right_at = _walk_ends(symbols, k, by_symbol, +1, +1, False, anchor)
    for v in range(n):
        for q in by_symbol[symbols[v]]:
            if q <= v:
                continue
            joins = _step_ends(left_and_back, symbols, v, q, +1, -1, k, k)
            if not joins:
                continue
            turns = _step_ends(right_both, symbols, v, q, +1, +1, k - 1, k)
            if anchor is None:
                if _rises_into(joins, turns, v, k):
                    return True
                continue
            joins_at = _step_ends(left_at, symbols, v, q, +1, -1, k, k)
            turns_at = _step_ends(right_at, symbols, v, q, +1, +1, k - 1, k)
            if _rises_into(joins_at, turns, v, k):
                return True
            if _rises_into(joins, turns_at, v if q == anchor else None, k):
                return True

    # Valley in the second half: start at the pair (i_{m-r}, i_m).
    back_both, back_at = _walk_ends(symbols, k, by_symbol, +1, +1, True, anchor)
    down_and_up, down_at = _walk_ends(symbols, k, by_symbol, -1, +1, False, anchor)
    for u in range(n):
        for v in by_symbol[symbols[u]]:
            if v >= u:
                break
            joins = back_both[(u, v)]
            turns = (1 << u) | _step_ends(down_and_up, symbols, u, v, -1, +1, k, k - 1)
            if anchor is None:
                if _falls_into(joins, turns, k):
                    return True
                continue
            turns_at = _step_ends(down_at, symbols, u, v, -1, +1, k, k - 1)
            if v == anchor:
                turns_at |= 1 << u
            if _falls_into(back_at[(u, v)], turns, k) or _falls_into(joins, turns_at, k):
                return True
    return False


def has_k_bad(symbols: SymbolList[int], k: int) -> bool:
    """Whether the 0-based word has a k-bad index sequence."""
    return _has_k_bad(symbols, k, None)


def has_k_bad_ending(symbols: SymbolList[int], k: int) -> bool:
    """
    Whether the 0-based word has a k-bad index sequence whose largest index is the last position.

    Every prefix of a k-special word is k-special, so when ``symbols[:-1]`` is k-special
    this agrees with ``has_k_bad(symbols, k)``.
    """
    return _has_k_bad(symbols, k, len(symbols) - 1)


def _moves(pos: int, phase: int, index: int, k: int, n: int) -> list[_Move]:
    """Admissible next (position, phase) from the index-th position, ascending."""
    if phase == _DOWN:
        result = [(p, _DOWN) for p in range(max(0, pos - k), pos)]
        if index > 1:
            result.extend((p, _UP) for p in range(pos + 1, min(n, pos + k)))
        return result
    return [(p, _UP) for p in range(pos + 1, min(n, pos + k + 1))]


def _advance(
    states: set[_Move], symbol: int, symbols: SymbolList[int], k: int
) -> set[_Move]:
    n = len(symbols)
    return {
        move
        for pos, phase in states
        for move in _moves(pos, phase, 2, k, n)
        if symbols[move[0]] == symbol
    }


def _complete_second_half(
    first_half: list[int],
    phase: int,
    symbols: SymbolList[int],
    k: int,
    by_symbol: dict[int, list[int]],
) -> Optional[list[int]]:
    """Lexicographically least i_{r+1}..i_{2r} continuing ``first_half``, if any."""
    r = len(first_half)
    n = len(symbols)
    targets = [symbols[i] for i in first_half]
    both = (_DOWN, _UP)
    good: list[set[_Move]] = [set() for _ in range(r)]
    good[r - 1] = {(p, ph) for p in by_symbol[targets[r - 1]] for ph in both}
    for t in range(r - 2, -1, -1):
        after = good[t + 1]
        good[t] = {
            (p, ph)
            for p in by_symbol[targets[t]]
            for ph in both
            if any(move in after for move in _moves(p, ph, r + t + 1, k, n))
        }
        if not good[t]:
            return None

    tail = []
    pos = first_half[-1]
    for t in range(r):
        step = next((m for m in _moves(pos, phase, r + t, k, n) if m in good[t]), None)
        if step is None:
            return None
        pos, phase = step
        tail.append(pos)
    return tail


def _least_witness_of_half_length(
    symbols: SymbolList[int], k: int, r: int, by_symbol: dict[int, list[int]]
) -> Optional[list[int]]:
    """Lexicographically least 0-based k-bad index sequence of length 2r."""
    n = len(symbols)
    for start in range(n):
        initial = {(p, ph) for p in by_symbol[symbols[start]] for ph in (_DOWN, _UP)}
        if r == 1:
            tail = _complete_second_half([start], _DOWN, symbols, k, by_symbol)
            if tail is not None:
                return [start, *tail]
            continue

        chosen = [start]
        phases = [_DOWN]
        candidates = [initial]
        frames = [iter(_moves(start, _DOWN, 1, k, n))]
        while frames:
            step = next(frames[-1], None)
            if step is None:
                frames.pop()
                chosen.pop()
                phases.pop()
                candidates.pop()
                continue
            pos, phase = step
            states = _advance(candidates[-1], symbols[pos], symbols, k)
            if not states:
                continue
            chosen.append(pos)
            phases.append(phase)
            candidates.append(states)
            if len(chosen) == r:
                tail = _complete_second_half(chosen, phase, symbols, k, by_symbol)
                if tail is not None:
                    return chosen + tail
                chosen.pop()
                phases.pop()
                candidates.pop()
            else:
                frames.append(iter(_moves(pos, phase, len(chosen), k, n)))
    return None


def find_k_bad(seq: Sequence, k: int) -> Optional[KBadWitness]:
    """
    Find a k-bad index sequence of the word.

    Args:
        seq: The word.
        k: Maximum step between consecutive indices, at least 1.

    Returns:
        The witness with the fewest indices, then the lexicographically least
        index list, using 1-based indices; None if the word is k-special.

    Raises:
        ValueError: If k < 1.
    """
    _check_k(k)
    symbols = seq.symbols
    if not has_k_bad(symbols, k):
        return None
    by_symbol = _positions_by_symbol(symbols)
    for r in range(1, len(symbols) + 1):
        found = _least_witness_of_half_length(symbols, k, r, by_symbol)
        if found is not None:
            valley = found.index(min(found)) + 1
            return KBadWitness(indices=tuple(i + 1 for i in found), valley=valley)
    raise AssertionError("k-bad sequence detected but no witness reconstructed")


def is_k_special(seq: Sequence, k: int) -> bool:
    """Whether the word has no k-bad index sequence."""
    _check_k(k)
    return not has_k_bad(seq.symbols, k)


def check_witness(seq: Sequence, witness: KBadWitness, k: int) -> bool:
    """
    Re-check a witness directly against the four defining conditions.

    Raises:
        IndexError: If an index is outside 1..len(seq).
    """
    _check_k(k)
    indices = witness.indices
    for index in indices:
        if not 1 <= index <= len(seq):
            raise IndexError(f"index {index} is outside 1..{len(seq)}")
    symbols = seq.symbols
    r = witness.half_length
    m = witness.valley
    count = len(indices)

    if any(symbols[indices[j] - 1] != symbols[indices[j + r] - 1] for j in range(r)):
        return False
    if any(indices[j] <= indices[j + 1] for j in range(m - 1)):
        return False
    if any(indices[j] >= indices[j + 1] for j in range(m - 1, count - 1)):
        return False
    if any(abs(indices[j] - indices[j + 1]) > k for j in range(count - 1)):
        return False
    if m < count and not indices[m] < indices[m - 1] + k:
        return False
    return True


def min_distance_criterion(seq: Sequence, k: int) -> Optional[tuple[int, int]]:
    """
    First pair of 1-based positions i < j < i + 2k holding equal symbols.

    Present exactly when the word has a k-bad sequence of at most four indices
    with valley m <= 3.
    """
    _check_k(k)
    symbols = seq.symbols
    n = len(symbols)
    for i in range(n):
        for j in range(i + 1, min(n, i + 2 * k)):
            if symbols[i] == symbols[j]:
                return i + 1, j + 1
    return None


def s_n_c(n: int, c: int) -> Sequence:
    """The word 1, 2, ..., n, 1, 2, ..., c over n symbols."""
    if not n > c >= 0:
        raise ValueError(f"S_(n,c) needs n > c >= 0, got n={n}, c={c}")
    return Sequence(symbols=tuple(range(n)) + tuple(range(c)), alphabet_size=n)


def construct_3k_plus_1(k: int, target_length: int) -> Sequence:
    """
    A k-special word on 3k + 1 symbols.

    Each c of the aba/bab-free word becomes the block c^(0..k) and each a or b the
    block a^(1..k) or b^(1..k). Internally c^(i) is i, a^(i) is k + i and b^(i) is 2k + i.
    """
    _check_k(k)
    blocks = {
        2: tuple(range(0, k + 1)),
        0: tuple(range(k + 1, 2 * k + 1)),
        1: tuple(range(2 * k + 1, 3 * k + 1)),
    }
    abc = thue_aba_bab_free(-(-target_length // k))
    symbols = tuple(s for letter in abc.symbols for s in blocks[letter])
    return Sequence(symbols=symbols[:target_length], alphabet_size=3 * k + 1)


def construct_3k_plus_2(k: int, target_length: int) -> Sequence:
    """The (k+1)-block expansion of the square-free word with every 0^(0) removed; 3k + 2 symbols."""
    _check_k(k)
    base = thue_squarefree(-(-target_length // k))
    expanded = block_expand(base, k + 1)
    symbols = tuple(s - 1 for s in expanded.symbols if s != 0)
    return Sequence(symbols=symbols[:target_length], alphabet_size=3 * k + 2)


def corollary_3k3_sequence(k: int, target_length: int) -> Sequence:
    """The (k+1)-block expansion of the square-free ternary word; 3(k + 1) symbols."""
    _check_k(k)
    base = thue_squarefree(-(-target_length // (k + 1)))
    return block_expand(base, k + 1).prefix(target_length)


def palindrome_free_block_sequence(k: int, target_length: int) -> Sequence:
    """The k-block expansion of the palindrome-free word; 4k symbols."""
    _check_k(k)
    base = palindrome_free_thue(-(-target_length // k))
    return block_expand(base, k).prefix(target_length)


def strange_form_sequence(k: int, x: SymbolList[int]) -> Sequence:
    """
    The length-5k+3 word [1,2k], 1, [2k+1,3k], x1, [k+2,2k], 1, x2, ..., xk, x1, 2k+1.

    Args:
        k: Locality parameter.
        x: A permutation of 2..k+1 (1-based).

    Raises:
        ValueError: If x is not a permutation of 2..k+1.
    """
    _check_k(k)
    if sorted(x) != list(range(2, k + 2)):
        raise ValueError(f"x must be a permutation of 2..{k + 1}, got {list(x)}")
    external = [
        *range(1, 2 * k + 1),
        1,
        *range(2 * k + 1, 3 * k + 1),
        x[0],
        *range(k + 2, 2 * k + 1),
        1,
        *x[1:],
        x[0],
        2 * k + 1,
    ]
    return Sequence.from_external(external, alphabet_size=3 * k)
