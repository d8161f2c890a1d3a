"""Exact search for nonrepetitive edge colorings of T_{k,h} on a fixed palette."""

import logging
import threading
import time
from collections.abc import Callable
from concurrent.futures import Future, ProcessPoolExecutor
from pathlib import Path
from typing import Optional

from nonrep.models.report import ChromaticReport, ChromaticTaskResult, SearchMode
from nonrep.models.tree import EdgeColoring, TreeShape, walk_path
from nonrep.services.checkpoint import CheckpointLog
from nonrep.services.trees import best_construction, canonical_word

logger = logging.getLogger(__name__)

_CLOCK_STRIDE = 1024


class _Stopped(Exception):
    """The deadline passed or the search was cancelled."""


class ColoringSearch:
    """
    Backtracking over the edges of a tree in breadth-first order.

    Edge v is colored after edges 2..v-1. Every path that ends at v and reaches
    back to a smaller label is complete at that moment, so only those paths are
    checked for squares when v is colored.

    Two symmetry rules cut the search: a new color is always the smallest unused
    one, and sibling edges carry increasing colors. Every coloring is equivalent
    to one obeying both (its least breadth-first form does), so no class is lost.
    """

    def __init__(
        self,
        shape: TreeShape,
        palette: int,
        mode: SearchMode = "exists",
        deadline: Optional[float] = None,
        cancel: Optional[threading.Event] = None,
    ):
        """
        Initialize the ColoringSearch.

        Args:
            shape: The tree to color.
            palette: Number of colors available.
            mode: "exists" stops at the first coloring; "count_classes" visits all
                of them and collects their canonical forms.
            deadline: Wall-clock time (``time.time()``) after which to stop.
            cancel: Event that stops the search when set.
        """
        if palette < 1:
            raise ValueError(f"palette must be at least 1, got {palette}")
        self.shape = shape
        self.palette = palette
        self.mode = mode
        self.deadline = deadline
        self.cancel = cancel
        self.k = shape.k
        self.last = shape.vertex_count
        self.parents = shape.parent_table()
        self.col = [0] * (self.last + 1)
        self.max_used = [0] * (self.last + 1)
        self.nodes = 0
        self.witness: Optional[list[int]] = None
        self.forms: set[tuple[int, ...]] = set()
        self.paths = self._closing_paths()

    def _closing_paths(self) -> list[list[tuple[tuple[int, ...], int]]]:
        depths = self.shape.depth_table()
        paths: list[list[tuple[tuple[int, ...], int]]] = [[] for _ in range(self.last + 1)]
        for v in range(2, self.last + 1):
            found = []
            for u in range(1, v):
                if (depths[u] + depths[v]) % 2 == 0:
                    path = tuple(walk_path(self.k, v, u, depths[v], depths[u]))
                    found.append((path, len(path) // 2))
            found.sort(key=lambda item: item[1])
            paths[v] = found
        return paths

    def _square_free_at(self, v: int) -> bool:
        col = self.col
        for path, half in self.paths[v]:
            for i in range(half):
                if col[path[i]] != col[path[i + half]]:
                    break
            else:
                return False
        return True

    def _candidates(self, v: int) -> list[int]:
        col = self.col
        low = col[v - 1] + 1 if (v - 2) % self.k else 1
        high = min(self.palette, self.max_used[v - 1] + 1)
        parent = self.parents[v]
        forbidden = col[parent] if parent > 1 else 0
        return [color for color in range(low, high + 1) if color != forbidden]

    def _expired(self) -> bool:
        if self.cancel is not None and self.cancel.is_set():
            return True
        return self.deadline is not None and time.time() >= self.deadline

    def _assign(self, v: int, color: int) -> bool:
        self.col[v] = color
        self.max_used[v] = max(self.max_used[v - 1], color)
        return self._square_free_at(v)

    def _fix_prefix(self, prefix: list[int]) -> bool:
        for offset, color in enumerate(prefix):
            v = offset + 2
            if color not in self._candidates(v) or not self._assign(v, color):
                return False
        return True

    def _run(self, start: int, end: int, on_leaf: Callable[[], bool]) -> bool:
        """Color edges start..end; returns True when ``on_leaf`` asked to stop."""
        if start > end:
            return on_leaf()
        frames = [(start, iter(self._candidates(start)))]
        while frames:
            v, choices = frames[-1]
            color = next(choices, None)
            if color is None:
                self.col[v] = 0
                frames.pop()
                continue
            self.nodes += 1
            if self.nodes % _CLOCK_STRIDE == 0 and self._expired():
                raise _Stopped
            if not self._assign(v, color):
                continue
            if v == end:
                if on_leaf():
                    return True
            else:
                frames.append((v + 1, iter(self._candidates(v + 1))))
        return False

    def _leaf(self) -> bool:
        colors = self.col[2:]
        if self.witness is None:
            self.witness = list(colors)
        if self.mode == "exists":
            return True
        self.forms.add(canonical_word(self.k, self.last, self.col))
        return False

    def run(self, prefix: Optional[list[int]] = None) -> ChromaticTaskResult:
        """
        Search every coloring that starts with ``prefix`` on edges 2, 3, ...

        Returns:
            The outcome; ``complete`` is false after a deadline or interrupt.
        """
        prefix = list(prefix or [])
        complete = True
        try:
            if self._expired():
                raise _Stopped
            if self._fix_prefix(prefix):
                self._run(len(prefix) + 2, self.last, self._leaf)
        except _Stopped:
            complete = False
        except KeyboardInterrupt:
            complete = False
        return ChromaticTaskResult(
            prefix=prefix,
            witness=self.witness,
            canonical_forms=[list(form) for form in sorted(self.forms)],
            nodes_explored=self.nodes,
            complete=complete,
        )

    def split(self, depth: int) -> list[list[int]]:
        """Valid colorings of the first ``depth`` edges, used as independent tasks."""
        end = min(self.last, depth + 1)
        prefixes: list[list[int]] = []

        def collect() -> bool:
            prefixes.append(self.col[2 : end + 1])
            return False

        self._run(2, end, collect)
        self.nodes = 0
        return prefixes


def _run_task(
    shape: TreeShape,
    palette: int,
    mode: SearchMode,
    prefix: list[int],
    deadline: Optional[float],
) -> ChromaticTaskResult:
    return ColoringSearch(shape, palette, mode, deadline).run(prefix)


def chromatic_index_exact(
    shape: TreeShape,
    palette: int,
    mode: SearchMode = "exists",
    *,
    budget: Optional[float] = None,
    workers: int = 1,
    checkpoint: Optional[Path] = None,
    resume: bool = False,
    cancel: Optional[threading.Event] = None,
) -> ChromaticReport:
    """
    Decide whether the tree has a nonrepetitive coloring on ``palette`` colors.

    The work is split on the colors of the first k + 1 edges; the pieces run in
    order, or in worker processes, and are merged in that same order, so the
    report does not depend on the number of workers.

    Args:
        shape: The tree.
        palette: Number of colors, at least 1.
        mode: "exists" or "count_classes".
        budget: Wall-clock seconds before the search gives up.
        workers: Number of worker processes.
        checkpoint: NDJSON file receiving one frame per completed piece.
        resume: Skip the pieces already recorded in ``checkpoint``.
        cancel: Event that stops a single-process search when set.

    Returns:
        A report carrying the witness, the class count in "count_classes" mode,
        and bounds on the Thue chromatic index implied by this palette.
    """
    if palette < 1:
        raise ValueError(f"palette must be at least 1, got {palette}")
    deadline = time.time() + budget if budget is not None else None
    splitter = ColoringSearch(shape, palette, mode)
    prefixes = splitter.split(shape.k + 1)
    logger.info("%s on %d colors (%s): %d tasks", shape, palette, mode, len(prefixes))

    log: Optional[CheckpointLog[ChromaticTaskResult]] = None
    done: dict[tuple[int, ...], ChromaticTaskResult] = {}
    if checkpoint is not None:
        header = {
            "search": "chromatic",
            "k": shape.k,
            "h": shape.h,
            "palette": palette,
            "mode": mode,
        }
        log = CheckpointLog(checkpoint, header, ChromaticTaskResult)
        for frame in log.open(resume):
            if frame.complete:
                done[tuple(frame.prefix)] = frame

    results: dict[tuple[int, ...], ChromaticTaskResult] = {}

    def finished(result: ChromaticTaskResult) -> bool:
        results[tuple(result.prefix)] = result
        if log is not None and result.complete and tuple(result.prefix) not in done:
            log.append(result)
        return mode == "exists" and result.witness is not None

    pending = []
    for prefix in prefixes:
        key = tuple(prefix)
        if key in done:
            if finished(done[key]):
                break
        else:
            pending.append(prefix)
    else:
        if workers > 1 and len(pending) > 1:
            _run_in_pool(shape, palette, mode, pending, deadline, workers, finished)
        else:
            for prefix in pending:
                search = ColoringSearch(shape, palette, mode, deadline, cancel)
                result = search.run(prefix)
                if finished(result) or not result.complete:
                    break

    return _merge(shape, palette, mode, prefixes, results)


def _run_in_pool(
    shape: TreeShape,
    palette: int,
    mode: SearchMode,
    pending: list[list[int]],
    deadline: Optional[float],
    workers: int,
    finished: Callable[[ChromaticTaskResult], bool],
) -> None:
    pool = ProcessPoolExecutor(max_workers=workers)
    futures: list[Future[ChromaticTaskResult]] = [
        pool.submit(_run_task, shape, palette, mode, prefix, deadline) for prefix in pending
    ]
    try:
        for future in futures:
            if finished(future.result()):
                break
    except KeyboardInterrupt:
        logger.warning("interrupted; keeping the tasks finished so far")
    pool.shutdown(wait=False, cancel_futures=True)


def _merge(
    shape: TreeShape,
    palette: int,
    mode: SearchMode,
    prefixes: list[list[int]],
    results: dict[tuple[int, ...], ChromaticTaskResult],
) -> ChromaticReport:
    nodes = sum(result.nodes_explored for result in results.values())
    witness: Optional[list[int]] = None
    forms: set[tuple[int, ...]] = set()
    exhaustive = True
    for prefix in prefixes:
        result = results.get(tuple(prefix))
        if result is None or not result.complete:
            if mode == "exists" and witness is not None:
                break
            exhaustive = False
            if result is None:
                continue
        if witness is None and result.witness is not None:
            witness = result.witness
        forms.update(tuple(form) for form in result.canonical_forms)

    coloring = None
    if witness is not None:
        coloring = EdgeColoring(shape=shape, colors=tuple(witness), palette_size=palette)
    lower = shape.max_degree
    if witness is None and exhaustive:
        lower = max(lower, palette + 1)
    upper = palette if witness is not None else None
    pi_prime = palette if witness is not None and palette <= lower else None
    return ChromaticReport(
        shape=shape,
        palette=palette,
        mode=mode,
        pi_prime=pi_prime,
        lower_bound=lower,
        upper_bound=upper,
        witness_coloring=coloring,
        class_count=len(forms) if mode == "count_classes" else None,
        nodes_explored=nodes,
        exhaustive=exhaustive,
    )


def thue_chromatic_index(
    shape: TreeShape,
    *,
    budget: Optional[float] = None,
    workers: int = 1,
    cancel: Optional[threading.Event] = None,
) -> ChromaticReport:
    """
    Determine pi'(T_{k,h}) by trying palettes upward from the maximum degree.

    The best known construction bounds the scan from above. When the budget runs
    out the report carries the bounds reached and the construction as witness.
    """
    deadline = time.time() + budget if budget is not None else None
    label, construction = best_construction(shape)
    upper = construction.palette_size
    lower = shape.max_degree
    nodes = 0
    for palette in range(lower, upper):
        remaining = None if deadline is None else max(deadline - time.time(), 0.0)
        if remaining == 0.0:
            break
        report = chromatic_index_exact(
            shape, palette, "exists", budget=remaining, workers=workers, cancel=cancel
        )
        nodes += report.nodes_explored
        if report.found:
            logger.info("%s: pi' = %d", shape, palette)
            return report.model_copy(
                update={"pi_prime": palette, "lower_bound": palette, "nodes_explored": nodes}
            )
        if not report.exhaustive:
            logger.info("%s: budget exhausted at %d colors", shape, palette)
            return ChromaticReport(
                shape=shape,
                lower_bound=lower,
                upper_bound=upper,
                witness_coloring=construction,
                nodes_explored=nodes,
                exhaustive=False,
            )
        lower = palette + 1

    exact = lower == upper
    logger.info("%s: %s from %s", shape, f"pi' = {upper}" if exact else f"{lower}..{upper}", label)
    return ChromaticReport(
        shape=shape,
        palette=upper if exact else None,
        pi_prime=upper if exact else None,
        lower_bound=lower,
        upper_bound=upper,
        witness_coloring=construction,
        nodes_explored=nodes,
        exhaustive=exact,
    )
