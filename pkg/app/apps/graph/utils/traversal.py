"""
Breadth-first traversal helpers shared by every search in the toolkit
Tie-breaking is lowest vertex id first (adjacency rows are sorted)
"""
from collections import deque
from typing import Collection, Dict, Iterable, List, Optional, Set, Tuple

from app.apps.graph.models import Graph


def bfs_distances(
    g: Graph,
    sources: Iterable[int],
    blocked: Optional[Collection[int]] = None,
    limit: Optional[int] = None,
) -> Dict[int, int]:
    """Distances from the source set, never entering `blocked`, up to depth `limit`."""
    blocked = blocked or ()
    dist: Dict[int, int] = {}
    queue = deque()
    for s in sorted(set(sources)):
        if s not in blocked:
            dist[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        if limit is not None and dist[u] >= limit:
            continue
        for w in g.adjacency[u]:
            if w not in dist and w not in blocked:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def bfs_parents(
    g: Graph,
    sources: Iterable[int],
    blocked: Optional[Collection[int]] = None,
    allowed: Optional[Collection[int]] = None,
    limit: Optional[int] = None,
) -> Tuple[Dict[int, Optional[int]], Dict[int, int]]:
    """BFS forest (parent map, depth map) from the sources."""
    blocked = blocked or ()
    parent: Dict[int, Optional[int]] = {}
    depth: Dict[int, int] = {}
    queue = deque()
    for s in sorted(set(sources)):
        if s in blocked or (allowed is not None and s not in allowed):
            continue
        parent[s] = None
        depth[s] = 0
        queue.append(s)
    while queue:
        u = queue.popleft()
        if limit is not None and depth[u] >= limit:
            continue
        for w in g.adjacency[u]:
            if w in parent or w in blocked:
                continue
            if allowed is not None and w not in allowed:
                continue
            parent[w] = u
            depth[w] = depth[u] + 1
            queue.append(w)
    return parent, depth


def walk_to_root(parent: Dict[int, Optional[int]], v: int) -> List[int]:
    """Vertices from v up to its BFS root, inclusive."""
    chain = [v]
    while parent[chain[-1]] is not None:
        chain.append(parent[chain[-1]])
    return chain


def shortest_path_between(
    g: Graph,
    sources: Iterable[int],
    targets: Collection[int],
    blocked: Optional[Collection[int]] = None,
    limit: Optional[int] = None,
) -> Optional[List[int]]:
    """
    Shortest path from the source set to the target set avoiding `blocked`.

    Only the first vertex lies in the sources and only the last in the targets.
    """
    blocked = blocked or ()
    targets = set(targets)
    parent: Dict[int, Optional[int]] = {}
    depth: Dict[int, int] = {}
    queue = deque()
    for s in sorted(set(sources)):
        if s in blocked:
            continue
        if s in targets:
            return [s]
        parent[s] = None
        depth[s] = 0
        queue.append(s)
    while queue:
        u = queue.popleft()
        if limit is not None and depth[u] >= limit:
            continue
        for w in g.adjacency[u]:
            if w in parent or w in blocked:
                continue
            parent[w] = u
            depth[w] = depth[u] + 1
            if w in targets:
                return list(reversed(walk_to_root(parent, w)))
            queue.append(w)
    return None


def connected_components(g: Graph, allowed: Optional[Collection[int]] = None) -> List[List[int]]:
    """Components (sorted vertex lists) of g, or of g restricted to `allowed`."""
    pool = range(g.vertex_count) if allowed is None else sorted(allowed)
    allowed_set: Optional[Set[int]] = None if allowed is None else set(allowed)
    seen: Set[int] = set()
    components: List[List[int]] = []
    for root in pool:
        if root in seen:
            continue
        parent, _ = bfs_parents(g, [root], allowed=allowed_set)
        seen.update(parent)
        components.append(sorted(parent))
    return components


def is_connected(g: Graph, vertices: Optional[Collection[int]] = None) -> bool:
    pool = list(range(g.vertex_count)) if vertices is None else list(vertices)
    if not pool:
        return True
    parent, _ = bfs_parents(g, [min(pool)], allowed=set(pool))
    return len(parent) == len(set(pool))


def eccentricity_within(g: Graph, root: int, vertices: Collection[int]) -> int:
    """Depth of the BFS tree of G[vertices] rooted at root."""
    _, depth = bfs_parents(g, [root], allowed=set(vertices))
    return max(depth.values()) if depth else 0
