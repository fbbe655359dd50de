"""
Avoiding-set connections and low-diameter vertex sets
"""
import logging
import math
from collections import deque
from fractions import Fraction
from typing import Collection, Dict, Iterable, List, Optional, Set

from app.apps.expander.utils.verify import Rational
from app.apps.graph.models import Graph, Path
from app.apps.graph.utils.traversal import shortest_path_between
from app.common.errors import PreconditionError, SearchFailure, verify

logger = logging.getLogger(__name__)


def connect_avoiding(
    g: Graph,
    x: Collection[int],
    y: Collection[int],
    b: Collection[int] = (),
    expander_alpha: Optional[Rational] = None,
    max_length: Optional[int] = None,
) -> Path:
    """
    Shortest path from x to y in g - b (BFS layers from x).

    With `expander_alpha` (g was verified to be an alpha-expander) and
    |x|, |y| > 2|b|/alpha, the length is asserted to be at most
    2 log_{1+alpha/2}(n).

    Raises:
        PreconditionError: x, y, b not pairwise disjoint, or x / y empty
        SearchFailure: no path ("disconnected after avoidance") or none within max_length
    """
    xs, ys, bs = set(x), set(y), set(b)
    if not xs or not ys:
        raise PreconditionError("connect_avoiding needs non-empty x and y")
    if xs & ys or xs & bs or ys & bs:
        raise PreconditionError("x, y and b must be pairwise disjoint")

    vertices = shortest_path_between(g, xs, ys, blocked=bs, limit=max_length)
    if vertices is None:
        if max_length is not None and shortest_path_between(g, xs, ys, blocked=bs) is not None:
            raise SearchFailure(f"no avoiding path of length <= {max_length}")
        raise SearchFailure("disconnected after avoidance")
    path = Path(vertices=tuple(vertices))

    if expander_alpha is not None:
        a = Fraction(expander_alpha)
        if a > 0 and len(xs) * a > 2 * len(bs) and len(ys) * a > 2 * len(bs):
            bound = 2 * math.log(max(g.vertex_count, 2)) / math.log(1 + float(a) / 2)
            verify(path.length <= bound, "avoiding path longer than the expander bound", length=path.length)
    return path


def _bfs_prefix(
    g: Graph,
    sources: Iterable[int],
    m: int,
    radius: int,
    allowed: Optional[Set[int]],
) -> List[int]:
    # BFS order truncated at m vertices: a BFS tree with its last-found leaves trimmed
    depth: Dict[int, int] = {}
    order: List[int] = []
    queue = deque()
    for s in sources:
        depth[s] = 0
        order.append(s)
        queue.append(s)
    while queue and len(order) < m:
        u = queue.popleft()
        if depth[u] >= radius:
            continue
        for w in g.adjacency[u]:
            if w in depth or (allowed is not None and w not in allowed):
                continue
            depth[w] = depth[u] + 1
            order.append(w)
            queue.append(w)
            if len(order) >= m:
                break
    return order[:m]


def find_low_diameter_set(
    g: Graph,
    m: int,
    max_diameter: int,
    avoid: Collection[int] = (),
    max_roots: Optional[int] = None,
) -> List[int]:
    """
    Exactly m vertices inducing a connected subgraph of diameter <= max_diameter.

    Grows a BFS tree of depth max_diameter // 2 from each root in increasing id
    order and keeps its first m vertices. For odd max_diameter, trees rooted at
    an edge are tried too (two adjacent roots, same depth bound).

    Raises:
        PreconditionError: m > n or m < 1
        SearchFailure: no tried root reaches m vertices
    """
    if m < 1 or m > g.vertex_count:
        raise PreconditionError(f"need 1 <= m <= n, got m={m}, n={g.vertex_count}")
    blocked = set(avoid)
    allowed = None if not blocked else {v for v in g.vertices() if v not in blocked}
    radius = max_diameter // 2
    candidates = [v for v in g.vertices() if v not in blocked]
    if max_roots is not None:
        candidates = candidates[:max_roots]

    for root in candidates:
        found = _bfs_prefix(g, [root], m, radius, allowed)
        if len(found) == m:
            return sorted(found)

    if max_diameter % 2 == 1:
        for u in candidates:
            for v in g.adjacency[u]:
                if v <= u or v in blocked:
                    continue
                found = _bfs_prefix(g, [u, v], m, radius, allowed)
                if len(found) == m:
                    return sorted(found)

    raise SearchFailure(f"no BFS ball of radius {radius} holds {m} vertices")
