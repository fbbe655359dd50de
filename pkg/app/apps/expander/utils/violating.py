"""
Search for vertex sets that violate an expansion requirement
Exact subset scan for small graphs, sweep heuristics otherwise
"""
import logging
from collections import deque
from typing import Callable, List, Optional, Sequence, Set, Tuple

import numpy as np

from app.apps.graph.models import Graph

logger = logging.getLogger(__name__)

Requirement = Callable[[int], float]


class Violation:
    """A set X with |N(X)| < required(|X|)."""

    __slots__ = ("vertices", "neighborhood", "required")

    def __init__(self, vertices: Sequence[int], neighborhood: int, required: float):
        self.vertices: Tuple[int, ...] = tuple(sorted(vertices))
        self.neighborhood = neighborhood
        self.required = required

    @property
    def ratio(self) -> float:
        return self.neighborhood / len(self.vertices)

    def sort_key(self):
        return (self.ratio, self.vertices)

    def __repr__(self) -> str:
        return f"Violation(size={len(self.vertices)}, |N|={self.neighborhood}, required={self.required:.4f})"


def exact_scan(
    g: Graph,
    lo: int,
    hi: int,
    violates: Callable[[int, int], bool],
) -> Tuple[Optional[Tuple[int, ...]], int]:
    """
    Enumerate subsets with lo <= |S| <= hi in lexicographic order of their sorted
    vertex tuples; return the first S with violates(|S|, |N(S)|) and the number
    of sets checked.

    Preorder DFS over increasing vertex sequences visits subsets in exactly
    that order, so the first hit is the lexicographically least witness.
    Neighbourhoods are carried as bitmasks.
    """
    n = g.vertex_count
    if hi < lo or hi < 1:
        return None, 0
    masks = [sum(1 << w for w in row) for row in g.adjacency]
    checked = 0

    def visit(start: int, size: int, s_mask: int, n_mask: int, chosen: List[int]) -> Optional[List[int]]:
        nonlocal checked
        for v in range(start, n):
            s2 = s_mask | (1 << v)
            n2 = n_mask | masks[v]
            chosen.append(v)
            if size + 1 >= lo:
                checked += 1
                if violates(size + 1, (n2 & ~s2).bit_count()):
                    return list(chosen)
            if size + 1 < hi:
                found = visit(v + 1, size + 1, s2, n2, chosen)
                if found is not None:
                    return found
            chosen.pop()
        return None

    found = visit(0, 0, 0, 0, [])
    return (tuple(found) if found is not None else None), checked


class _Sweep:
    """Grows a set one vertex at a time while tracking |N(X)|."""

    __slots__ = ("g", "inside", "boundary", "order")

    def __init__(self, g: Graph):
        self.g = g
        self.inside: Set[int] = set()
        self.boundary: Set[int] = set()
        self.order: List[int] = []

    def add(self, v: int) -> None:
        self.inside.add(v)
        self.order.append(v)
        self.boundary.discard(v)
        for w in self.g.adjacency[v]:
            if w not in self.inside:
                self.boundary.add(w)


def _bfs_order(g: Graph, root: int, cap: int) -> List[int]:
    seen = {root}
    order = [root]
    queue = deque([root])
    while queue and len(order) < cap:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
                if len(order) >= cap:
                    break
    return order


def sweep_prefixes(
    g: Graph,
    order: Sequence[int],
    lo: int,
    hi: int,
    required: Requirement,
) -> Tuple[Optional[Violation], int]:
    """Best violating prefix of a vertex order (lowest |N|/|X|), and prefixes checked."""
    sweep = _Sweep(g)
    best: Optional[Violation] = None
    checked = 0
    for v in order:
        sweep.add(v)
        size = len(sweep.inside)
        if size > hi:
            break
        if size < lo:
            continue
        checked += 1
        need = required(size)
        if len(sweep.boundary) < need:
            cand = Violation(sweep.order, len(sweep.boundary), need)
            if best is None or cand.sort_key() < best.sort_key():
                best = cand
    return best, checked


def bfs_ball_violations(
    g: Graph,
    root: int,
    lo: int,
    hi: int,
    required: Requirement,
) -> Tuple[Optional[Violation], int]:
    """
    Check every BFS ball around root. The neighbourhood of the radius-r ball
    is exactly the sphere at radius r + 1.
    """
    dist = {root: 0}
    layers: List[List[int]] = [[root]]
    while layers[-1]:
        nxt: List[int] = []
        for u in layers[-1]:
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = len(layers)
                    nxt.append(w)
        layers.append(nxt)

    best: Optional[Violation] = None
    checked = 0
    ball: List[int] = []
    for r in range(len(layers) - 1):
        ball.extend(layers[r])
        size = len(ball)
        if size > hi:
            break
        if size < lo:
            continue
        checked += 1
        need = required(size)
        sphere = len(layers[r + 1])
        if sphere < need:
            cand = Violation(ball, sphere, need)
            if best is None or cand.sort_key() < best.sort_key():
                best = cand
    return best, checked


def random_connected_subset(g: Graph, root: int, size: int, rng: np.random.Generator) -> List[int]:
    """Grow a connected set from root by picking uniformly among frontier vertices."""
    inside = {root}
    order = [root]
    frontier = sorted(set(g.adjacency[root]))
    while frontier and len(order) < size:
        idx = int(rng.integers(len(frontier)))
        v = frontier[idx]
        frontier[idx] = frontier[-1]
        frontier.pop()
        if v in inside:
            continue
        inside.add(v)
        order.append(v)
        for w in g.adjacency[v]:
            if w not in inside:
                frontier.append(w)
    return order


def find_violating_set(
    g: Graph,
    required: Requirement,
    lo: int,
    hi: int,
    budget: int = 32,
    seed: int = 0,
) -> Optional[Violation]:
    """
    Heuristic search for X with lo <= |X| <= hi and |N(X)| < required(|X|).

    Candidates: BFS-order prefix sweeps from `budget` roots (every vertex when
    n <= budget, otherwise the lowest-degree vertices plus random ones) and
    `budget` random connected subsets. Returns the candidate with the lowest
    |N(X)|/|X| ratio, ties to the lexicographically least set.
    """
    n = g.vertex_count
    if n == 0 or hi < lo or hi < 1:
        return None
    rng = np.random.default_rng(seed)

    if n <= budget:
        roots = list(range(n))
    else:
        by_degree = np.argsort(g.degrees(), kind="stable")[: budget // 2].tolist()
        extra = rng.choice(n, size=budget - len(by_degree), replace=False).tolist()
        roots = sorted(set(by_degree) | set(extra))

    best: Optional[Violation] = None
    for root in roots:
        found, _ = sweep_prefixes(g, _bfs_order(g, root, hi), lo, hi, required)
        if found is not None and (best is None or found.sort_key() < best.sort_key()):
            best = found

    for _ in range(budget):
        root = int(rng.integers(n))
        size = int(rng.integers(lo, hi + 1))
        found, _ = sweep_prefixes(g, random_connected_subset(g, root, size, rng), lo, hi, required)
        if found is not None and (best is None or found.sort_key() < best.sort_key()):
            best = found

    if best is not None:
        logger.debug(f"[EXPANSION] violating set found in {g}: {best}")
    return best
