"""
Four-cycle detection and greedy C4-free subgraph extraction
"""
import logging
from typing import Dict, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict

from app.apps.graph.models import Cycle, Graph
from app.common.errors import VerificationError

logger = logging.getLogger(__name__)


class C4Check(BaseModel):
    free: bool
    witness: Optional[Cycle] = None


class C4FreeResult(BaseModel):
    """Best C4-free subgraph found and how it compares with the requested density."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    graph: Graph
    average_degree: float
    target_average_degree: float
    shortfall: bool
    removed_edges: int


def _four_cycle_at(rows: Sequence[Set[int]], u: int) -> Optional[Tuple[int, int, int, int]]:
    """A 4-cycle through u, as (u, v1, w, v2), or None; lowest ids first."""
    middle: Dict[int, int] = {}
    for v in sorted(rows[u]):
        for w in sorted(rows[v]):
            if w == u:
                continue
            if w in middle:
                return (u, middle[w], w, v)
            middle[w] = v
    return None


def is_c4_free(g: Graph) -> C4Check:
    """True iff no two vertices share two common neighbours; a witness 4-cycle otherwise."""
    rows = [set(row) for row in g.adjacency]
    for u in g.vertices():
        found = _four_cycle_at(rows, u)
        if found is not None:
            return C4Check(free=False, witness=Cycle(vertices=found))
    return C4Check(free=True)


def _cheapest_edge(rows: Sequence[Set[int]], cycle: Tuple[int, int, int, int]) -> Tuple[int, int]:
    # remove the edge whose lower endpoint degree is largest: least damage to the minimum degree
    edges = [(cycle[i], cycle[(i + 1) % 4]) for i in range(4)]
    return max(
        edges,
        key=lambda e: (min(len(rows[e[0]]), len(rows[e[1]])), -min(e), -max(e)),
    )


def _closes_four_cycle(rows: Sequence[Set[int]], a: int, b: int) -> bool:
    """Whether adding edge ab would create a 4-cycle a-x-y-b."""
    for x in rows[a]:
        if x == b:
            continue
        for y in rows[x]:
            if y != a and y != b and b in rows[y]:
                return True
    return False


def extract_c4_free_subgraph(g: Graph, target_avg_degree: float) -> C4FreeResult:
    """
    Greedy deletion heuristic: destroy every 4-cycle by removing one of its edges.

    Deleting edges never creates a 4-cycle, so one sweep over the vertices,
    re-scanning a vertex after each deletion, suffices. The postcondition is
    verified; the average-degree target is only reported against.
    """
    rows: List[Set[int]] = [set(row) for row in g.adjacency]
    deleted: List[Tuple[int, int]] = []
    for u in g.vertices():
        while True:
            found = _four_cycle_at(rows, u)
            if found is None:
                break
            a, b = _cheapest_edge(rows, found)
            rows[a].discard(b)
            rows[b].discard(a)
            deleted.append((min(a, b), max(a, b)))

    # restore deleted edges that no longer close a 4-cycle, making the result maximal
    for a, b in sorted(deleted):
        if not _closes_four_cycle(rows, a, b):
            rows[a].add(b)
            rows[b].add(a)
    removed = g.edge_count - sum(len(row) for row in rows) // 2

    result = Graph(g.vertex_count, rows, g.labels)
    check = is_c4_free(result)
    if not check.free:
        raise VerificationError("C4 extraction left a 4-cycle", witness=list(check.witness.vertices))

    avg = result.average_degree()
    shortfall = avg < target_avg_degree
    if shortfall:
        logger.info(f"[C4] average degree {avg:.3f} below target {target_avg_degree}")
    logger.debug(f"[C4] removed {removed} edges from {g}")
    return C4FreeResult(
        graph=result,
        average_degree=avg,
        target_average_degree=float(target_avg_degree),
        shortfall=shortfall,
        removed_edges=removed,
    )
