"""
Long cycles from rotation-extended paths
"""
import logging
from typing import List, Optional, Sequence

from app.apps.cycles.models import LongCycleResult
from app.apps.cycles.utils.interlaced import back_edge_cycle
from app.apps.cycles.utils.rotation import grow_path, posa_closure, start_vertices
from app.apps.expander.utils.connect import connect_avoiding
from app.apps.graph.models import Cycle, Graph, Path
from app.apps.graph.utils.structure import min_degree_core
from app.apps.graph.utils.traversal import is_connected, shortest_path_between
from app.common.errors import PreconditionError, SearchFailure

logger = logging.getLogger(__name__)

POLISH_LIMIT = 512


def _closures(g: Graph, vertices: Sequence[int], max_candidates: int) -> List[List[int]]:
    """Cycles obtainable from one path: direct closing edge, back edges, avoiding connection."""
    found: List[List[int]] = []
    x, y = vertices[0], vertices[-1]
    if len(vertices) >= 3 and g.has_edge(x, y):
        found.append(list(vertices))
        return found

    path = Path(vertices=tuple(vertices))
    for fixed in (x, y):
        closure = posa_closure(g, path, fixed, max_endpoints=max_candidates)
        for w in closure.endpoint_set[:max_candidates]:
            rotated = closure.replay(w).vertices
            if len(rotated) >= 3 and g.has_edge(rotated[0], rotated[-1]):
                found.append(list(rotated))
                continue
            cycle = back_edge_cycle(g, rotated)
            if cycle is not None:
                found.append(cycle)

    if len(vertices) >= 3:
        try:
            link = connect_avoiding(g, {y}, {x}, set(vertices[1:-1]))
            if link.length >= 2:
                found.append(list(vertices) + list(link.interior))
        except (SearchFailure, PreconditionError):
            pass
    return found


def insert_ears(g: Graph, cycle: List[int]) -> List[int]:
    """Replace a cycle edge uv by a longer u-v detour through off-cycle vertices, while one exists."""
    improved = True
    while improved:
        improved = False
        on = set(cycle)
        for i in range(len(cycle)):
            u, v = cycle[i], cycle[(i + 1) % len(cycle)]
            sources = [w for w in g.adjacency[u] if w not in on]
            targets = {w for w in g.adjacency[v] if w not in on}
            if not sources or not targets:
                continue
            detour = shortest_path_between(g, sources, targets, blocked=on)
            if detour is None:
                continue
            cycle = cycle[: i + 1] + detour + cycle[i + 1:]
            improved = True
            break
    return cycle


def find_long_cycle(
    g: Graph,
    min_len: int = 3,
    budget: int = 8,
    seed: int = 0,
    rotation_budget: int = 256,
    max_candidates: int = 16,
) -> LongCycleResult:
    """
    Longest cycle found from rotation-extended paths in the 2-core.

    Paths are grown from several start vertices; each is closed by its end
    edge, a back edge at any rotation endpoint, or an avoiding connection
    between its ends. Small graphs get an ear-insertion polish. The result
    flags whether min_len was reached.

    Raises:
        PreconditionError: g not connected
        SearchFailure: g is acyclic
    """
    if g.vertex_count == 0 or not is_connected(g):
        raise PreconditionError("find_long_cycle needs a connected graph")
    core = min_degree_core(g, 2)
    if core.vertex_count == 0:
        raise SearchFailure("graph is acyclic")

    best: Optional[List[int]] = None
    for start in start_vertices(core, budget, seed):
        vertices = grow_path(core, start, rotation_budget, None)
        for cycle in _closures(core, vertices, max_candidates):
            if best is None or len(cycle) > len(best):
                best = cycle
    if best is None:
        raise SearchFailure("no cycle closed from the grown paths")
    if core.vertex_count <= POLISH_LIMIT:
        best = insert_ears(core, best)

    index = g.local_index()
    lifted = tuple(index[label] for label in core.lift_all(best))
    cycle = Cycle(vertices=lifted)
    cycle.validate_in(g)
    met = cycle.length >= min_len
    logger.debug(f"[LONG-CYCLE] {g}: length {cycle.length}, target {min_len}, met={met}")
    return LongCycleResult(cycle=cycle, met_min_len=met)
