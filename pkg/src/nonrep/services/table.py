"""The table of Thue chromatic indices pi'(T_{k,h}) for small k and h."""

import logging
import math
import time
from typing import Optional

from nonrep.models.report import TableCell
from nonrep.models.tree import TreeShape
from nonrep.services.chromatic_search import chromatic_index_exact
from nonrep.services.trees import best_construction

logger = logging.getLogger(__name__)

_GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


def cited_lower_bound(k: int, h: int) -> tuple[int, str]:
    """
    Lower bound on pi'(T_{k,h}) from known theorems, with its source.

    The maximum degree always counts; trees of height 2 need floor(3k/2) + 1 colors
    and trees of height at least 3 more than (1 + sqrt 5)/2 * k.
    """
    shape = TreeShape(k=k, h=h)
    bound, source = shape.max_degree, "degree"
    if h >= 2 and k >= 2 and 3 * k // 2 + 1 > bound:
        bound, source = 3 * k // 2 + 1, "sv-lower"
    if h >= 3 and k >= 2 and math.floor(_GOLDEN_RATIO * k) + 1 > bound:
        bound, source = math.floor(_GOLDEN_RATIO * k) + 1, "golden-lower"
    return bound, source


def pi_table(
    max_k: int,
    max_h: int,
    budget: float,
    max_search_edges: int = 200,
    workers: int = 1,
) -> list[TableCell]:
    """
    Bounds on pi'(T_{k,h}) for 1 <= k <= max_k and 1 <= h <= max_h.

    Each cell starts from the cited lower bound, raised by monotonicity (a tree
    contains every smaller tree of the table), and the best construction. While
    they differ and the tree has at most ``max_search_edges`` edges, exact search
    tries the palettes in between, each cell getting ``budget`` seconds.

    Returns:
        Cells in row order (k, then h).
    """
    if max_k < 1 or max_h < 1:
        raise ValueError(f"max_k and max_h must be positive, got {max_k} and {max_h}")
    cells: dict[tuple[int, int], TableCell] = {}
    for k in range(1, max_k + 1):
        for h in range(1, max_h + 1):
            cells[(k, h)] = _cell(k, h, cells, budget, max_search_edges, workers)
    return [cells[(k, h)] for k in range(1, max_k + 1) for h in range(1, max_h + 1)]


def _cell(
    k: int,
    h: int,
    known: dict[tuple[int, int], TableCell],
    budget: float,
    max_search_edges: int,
    workers: int,
) -> TableCell:
    shape = TreeShape(k=k, h=h)
    lower, lower_source = cited_lower_bound(k, h)
    for smaller in (known.get((k, h - 1)), known.get((k - 1, h))):
        if smaller is not None and smaller.lower > lower:
            lower, lower_source = smaller.lower, f"monotone({smaller.k},{smaller.h})"
    upper_source, construction = best_construction(shape)
    upper = construction.palette_size

    if lower < upper and shape.edge_count <= max_search_edges:
        deadline = time.time() + budget
        while lower < upper:
            remaining = deadline - time.time()
            if remaining <= 0:
                break
            report = chromatic_index_exact(
                shape, lower, "exists", budget=remaining, workers=workers
            )
            if report.found:
                upper, upper_source = lower, "search"
            elif report.exhaustive:
                lower, lower_source = lower + 1, "search"
            else:
                break
        logger.info("%s: %d..%d after search", shape, lower, upper)

    provenance = upper_source if lower == upper else f"{lower_source};{upper_source}"
    if lower == upper and lower_source == "search" and upper_source != "search":
        provenance = f"search;{upper_source}"
    return TableCell(k=k, h=h, lower=lower, upper=upper, provenance=provenance)


def format_table_tsv(cells: list[TableCell]) -> str:
    """TSV with one row per cell: k, h, entry, exact|bounds, provenance."""
    lines = ["k\th\tpi\tstatus\tprovenance"]
    for cell in cells:
        status = "exact" if cell.exact else "bounds"
        lines.append(f"{cell.k}\t{cell.h}\t{cell.cell}\t{status}\t{cell.provenance}")
    return "\n".join(lines) + "\n"


def find_cell(cells: list[TableCell], k: int, h: int) -> Optional[TableCell]:
    """The cell for (k, h), if present."""
    return next((cell for cell in cells if cell.k == k and cell.h == h), None)
