"""Exhaustive search for the longest k-special words on n symbols."""

import logging
import threading
import time
from collections.abc import Callable
from concurrent.futures import Future, ProcessPoolExecutor
from pathlib import Path
from typing import Optional

from nonrep.models.report import FkBranchResult, FkReport
from nonrep.services.checkpoint import CheckpointLog
from nonrep.services.kspecial import has_k_bad_ending

logger = logging.getLogger(__name__)

_CLOCK_STRIDE = 256


class _Stopped(Exception):
    """The deadline passed or the search was cancelled."""


def default_length_cap(k: int) -> int:
    """Length at which a branch stops growing unless told otherwise."""
    return 8 * k + 8


class BranchExplorer:
    """
    Depth-first exploration of normalized words below a fixed prefix.

    A word is normalized when each new symbol is at most one more than the largest
    symbol used so far. Extensions are tried in increasing symbol order. A symbol
    equal to one of the previous 2k - 1 symbols is skipped outright; otherwise only
    k-bad index sequences ending at the new position are sought, since the word
    being extended is already k-special.
    """

    def __init__(
        self,
        k: int,
        n: int,
        length_cap: int,
        deadline: Optional[float] = None,
        cancel: Optional[threading.Event] = None,
    ):
        """
        Initialize the BranchExplorer.

        Args:
            k: Locality parameter.
            n: Alphabet size.
            length_cap: Words are not extended beyond this length.
            deadline: Wall-clock time (``time.time()``) after which to stop.
            cancel: Event that stops the search when set.
        """
        self.k = k
        self.n = n
        self.length_cap = length_cap
        self.deadline = deadline
        self.cancel = cancel
        self.nodes = 0
        self.best = 0
        self.best_words: list[tuple[int, ...]] = []
        self.capped = False

    def explore(self, prefix: list[int]) -> FkBranchResult:
        """Explore every k-special normalized extension of a k-special prefix."""
        word = list(prefix)
        complete = True
        try:
            if self._expired():
                raise _Stopped
            self._visit(word, max(word, default=-1))
        except _Stopped:
            complete = False
        except KeyboardInterrupt:
            complete = False
        return FkBranchResult(
            branch=[symbol + 1 for symbol in prefix],
            max_length=self.best,
            witnesses=[[symbol + 1 for symbol in w] for w in sorted(self.best_words)],
            nodes_explored=self.nodes,
            complete=complete,
            capped=self.capped,
        )

    def _expired(self) -> bool:
        if self.cancel is not None and self.cancel.is_set():
            return True
        return self.deadline is not None and time.time() >= self.deadline

    def _record(self, word: list[int]) -> None:
        length = len(word)
        if length > self.best:
            self.best = length
            self.best_words = [tuple(word)]
        elif length == self.best:
            self.best_words.append(tuple(word))

    def _visit(self, word: list[int], largest: int) -> None:
        self.nodes += 1
        if self.nodes % _CLOCK_STRIDE == 0 and self._expired():
            raise _Stopped
        self._record(word)
        if len(word) >= self.length_cap:
            self.capped = True
            return

        recent = set(word[-(2 * self.k - 1) :])
        for symbol in range(min(self.n, largest + 2)):
            if symbol in recent:
                continue
            word.append(symbol)
            if not has_k_bad_ending(word, self.k):
                self._visit(word, max(largest, symbol))
            word.pop()


def _explore_branch(
    k: int, n: int, length_cap: int, prefix: list[int], deadline: Optional[float]
) -> FkBranchResult:
    return BranchExplorer(k, n, length_cap, deadline).explore(prefix)


def _top_level_branches(k: int, n: int, root: list[int]) -> list[list[int]]:
    recent = set(root[-(2 * k - 1) :])
    branches = []
    for symbol in range(min(n, max(root, default=-1) + 2)):
        if symbol in recent:
            continue
        candidate = [*root, symbol]
        if not has_k_bad_ending(candidate, k):
            branches.append(candidate)
    return branches


def search_fk(
    k: int,
    n: int,
    length_cap: Optional[int] = None,
    *,
    budget: Optional[float] = None,
    workers: int = 1,
    checkpoint: Optional[Path] = None,
    resume: bool = False,
    cancel: Optional[threading.Event] = None,
) -> FkReport:
    """
    Find the longest k-special words on n symbols, up to renaming of symbols.

    Every k-special word can be renamed so that it starts 1, 2, ..., min(n, 2k), so
    the search fixes that prefix and splits the rest into one branch per choice of
    the next symbol. Branches may run in separate processes; the report does not
    depend on how many.

    Args:
        k: Locality parameter, at least 1.
        n: Alphabet size, at least 1.
        length_cap: Stop growing words at this length; defaults to 8k + 8.
        budget: Wall-clock seconds before the search gives up.
        workers: Number of worker processes.
        checkpoint: NDJSON file receiving one frame per completed branch.
        resume: Skip the branches already recorded in ``checkpoint``.
        cancel: Event that stops a single-process search when set.

    Returns:
        The report. ``exhaustive`` is false when the deadline, an interrupt or the
        length cap cut the search short.

    Raises:
        ValueError: If k or n is smaller than 1.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    cap = default_length_cap(k) if length_cap is None else length_cap
    if cap < 1:
        raise ValueError(f"length_cap must be at least 1, got {cap}")
    deadline = time.time() + budget if budget is not None else None

    root = list(range(min(n, 2 * k, cap)))
    root_capped = len(root) >= cap
    branches = [] if root_capped else _top_level_branches(k, n, root)
    logger.info("f_%d(%d): %d top-level branches, length cap %d", k, n, len(branches), cap)

    log: Optional[CheckpointLog[FkBranchResult]] = None
    done: dict[tuple[int, ...], FkBranchResult] = {}
    if checkpoint is not None:
        header = {"search": "fk", "k": k, "n": n, "length_cap": cap}
        log = CheckpointLog(checkpoint, header, FkBranchResult)
        for frame in log.open(resume):
            if frame.complete:
                done[tuple(frame.branch)] = frame

    results: list[FkBranchResult] = []
    pending = []
    for branch in branches:
        key = tuple(symbol + 1 for symbol in branch)
        if key in done:
            results.append(done[key])
        else:
            pending.append(branch)

    def finished(result: FkBranchResult) -> None:
        results.append(result)
        logger.info(
            "branch %s: longest %d after %d nodes%s",
            result.branch,
            result.max_length,
            result.nodes_explored,
            "" if result.complete else " (incomplete)",
        )
        if log is not None and result.complete:
            log.append(result)

    if workers > 1 and len(pending) > 1:
        _run_in_pool(k, n, cap, pending, deadline, workers, finished)
    else:
        for branch in pending:
            explorer = BranchExplorer(k, n, cap, deadline, cancel)
            result = explorer.explore(branch)
            finished(result)
            if not result.complete:
                break

    return _merge(k, n, root, root_capped, branches, results)


def _run_in_pool(
    k: int,
    n: int,
    cap: int,
    pending: list[list[int]],
    deadline: Optional[float],
    workers: int,
    finished: Callable[[FkBranchResult], None],
) -> None:
    pool = ProcessPoolExecutor(max_workers=workers)
    futures: list[Future[FkBranchResult]] = [
        pool.submit(_explore_branch, k, n, cap, branch, deadline) for branch in pending
    ]
    try:
        for future in futures:
            finished(future.result())
    except KeyboardInterrupt:
        logger.warning("interrupted; keeping the branches finished so far")
        pool.shutdown(wait=False, cancel_futures=True)
        return
    pool.shutdown()


def _merge(
    k: int,
    n: int,
    root: list[int],
    root_capped: bool,
    branches: list[list[int]],
    results: list[FkBranchResult],
) -> FkReport:
    best = len(root)
    words: set[tuple[int, ...]] = {tuple(symbol + 1 for symbol in root)}
    for result in results:
        if result.max_length > best:
            best = result.max_length
            words = set()
        if result.max_length == best:
            words.update(tuple(w) for w in result.witnesses)

    covered = {tuple(r.branch) for r in results if r.complete}
    all_covered = all(tuple(s + 1 for s in b) in covered for b in branches)
    exhaustive = all_covered and not root_capped and not any(r.capped for r in results)
    return FkReport(
        k=k,
        n=n,
        max_length=best,
        exhaustive=exhaustive,
        nodes_explored=1 + sum(r.nodes_explored for r in results),
        witnesses=[list(w) for w in sorted(words)],
    )
