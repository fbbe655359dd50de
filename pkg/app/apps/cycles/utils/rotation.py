"""
Posa rotations: endpoint closure and rotation-extended longest-path search
"""
import logging
from collections import deque
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from app.apps.cycles.models import Rotation, RotationClosure, rotate
from app.apps.graph.models import Graph, Path
from app.common.errors import PreconditionError, VerificationError

logger = logging.getLogger(__name__)


def _checked_path(g: Graph, p: Path) -> None:
    try:
        p.validate_in(g)
    except VerificationError as e:
        raise PreconditionError(f"not a path of the graph: {e.message}") from e


def posa_closure(g: Graph, p: Path, fixed: int, max_endpoints: Optional[int] = None) -> RotationClosure:
    """
    All free endpoints reachable by rotations that keep `fixed` in place.

    Breadth-first over rotations; states are deduplicated by endpoint only,
    each endpoint keeping the first path that reached it. Only path vertices
    take part in rotations. `max_endpoints` stops the search early.
    """
    _checked_path(g, p)
    if fixed not in (p.first, p.last):
        raise PreconditionError(f"{fixed} is not an endpoint of the path")

    base = list(p.vertices) if p.first == fixed else list(reversed(p.vertices))
    logs: Dict[int, Tuple[Rotation, ...]] = {base[-1]: ()}
    queue = deque([base])
    while queue and (max_endpoints is None or len(logs) < max_endpoints):
        vertices = queue.popleft()
        end = vertices[-1]
        pos = {v: i for i, v in enumerate(vertices)}
        for w in g.adjacency[end]:
            i = pos.get(w)
            if i is None or i >= len(vertices) - 2:
                continue
            rotated, step = rotate(vertices, i)
            new_end = rotated[-1]
            if new_end in logs:
                continue
            logs[new_end] = logs[end] + (step,)
            queue.append(rotated)
            if max_endpoints is not None and len(logs) >= max_endpoints:
                break

    return RotationClosure(
        base_path=p,
        fixed_endpoint=fixed,
        endpoint_set=tuple(sorted(logs)),
        rotation_log=logs,
    )


class _PathGrower:
    """A path with O(1) membership plus per-vertex counts of off-path neighbours."""

    def __init__(self, g: Graph, start: int, allowed: Optional[Set[int]] = None):
        self.g = g
        self.allowed = allowed
        self.vertices: List[int] = []
        self.on_path: Set[int] = set()
        self.free_degree = [
            sum(1 for w in row if allowed is None or w in allowed) for row in g.adjacency
        ]
        self.append(start)

    def usable(self, w: int) -> bool:
        return w not in self.on_path and (self.allowed is None or w in self.allowed)

    def append(self, v: int) -> None:
        self.vertices.append(v)
        self.on_path.add(v)
        for w in self.g.adjacency[v]:
            self.free_degree[w] -= 1

    def extend_greedily(self) -> None:
        # lowest free degree first, ties to lowest id
        while True:
            end = self.vertices[-1]
            options = [w for w in self.g.adjacency[end] if self.usable(w)]
            if not options:
                return
            self.append(min(options, key=lambda w: (self.free_degree[w], w)))

    def rotate_for_room(self, tried: Set[Tuple[int, int]]) -> bool:
        """Rotate to the new end with the most off-path neighbours; False when stuck."""
        end = self.vertices[-1]
        pos = {v: i for i, v in enumerate(self.vertices)}
        best: Optional[int] = None
        best_room = 0
        for w in self.g.adjacency[end]:
            i = pos.get(w)
            if i is None or i >= len(self.vertices) - 2:
                continue
            new_end = self.vertices[i + 1]
            if (end, new_end) in tried:
                continue
            room = self.free_degree[new_end]
            if room > best_room:
                best, best_room = i, room
        if best is None:
            return False
        tried.add((end, self.vertices[best + 1]))
        self.vertices, _ = rotate(self.vertices, best)
        return True


def grow_path(g: Graph, start: int, rotation_budget: int, allowed: Optional[Set[int]]) -> List[int]:
    grower = _PathGrower(g, start, allowed)
    for _ in range(2):
        tried: Set[Tuple[int, int]] = set()
        grower.extend_greedily()
        for _ in range(rotation_budget):
            if not grower.rotate_for_room(tried):
                break
            grower.extend_greedily()
        grower.vertices.reverse()
    return grower.vertices


def start_vertices(g: Graph, budget: int, seed: int, allowed: Optional[Sequence[int]] = None) -> List[int]:
    pool = sorted(allowed) if allowed is not None else list(g.vertices())
    if len(pool) <= budget:
        return pool
    rng = np.random.default_rng(seed)
    by_degree = sorted(pool, key=lambda v: (-g.degree(v), v))[: max(1, budget // 2)]
    chosen = set(by_degree)
    rest = [v for v in pool if v not in chosen]
    extra = rng.choice(len(rest), size=budget - len(by_degree), replace=False).tolist()
    return by_degree + [rest[i] for i in sorted(extra)]


def longest_path_heuristic(
    g: Graph,
    budget: int = 8,
    seed: int = 0,
    rotation_budget: int = 256,
    allowed: Optional[Set[int]] = None,
) -> Path:
    """
    Long simple path: greedy growth (fewest off-path neighbours first) from
    several start vertices, re-extended after Posa rotations whenever the end
    is stuck, then the same from the other end. Returns the longest found.
    """
    if g.vertex_count == 0:
        raise PreconditionError("longest path needs a non-empty graph")
    starts = start_vertices(g, budget, seed, allowed)
    if not starts:
        raise PreconditionError("no allowed start vertex")
    best: Optional[List[int]] = None
    for start in starts:
        vertices = grow_path(g, start, rotation_budget, allowed)
        if best is None or len(vertices) > len(best):
            best = vertices
    logger.debug(f"[ROTATION] longest path in {g}: {len(best) - 1} edges")
    return Path(vertices=tuple(best))
