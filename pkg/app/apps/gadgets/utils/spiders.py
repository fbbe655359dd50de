"""
Degree classes and nice-spider packing
"""
import logging
import math
from typing import Collection, List, Optional, Set, Tuple

import numpy as np

from app.apps.gadgets.models import DegreeDiagnostics, NiceSpider
from app.apps.gadgets.utils.validate import validate_spider
from app.apps.graph.models import Graph, Path
from app.apps.graph.utils.traversal import shortest_path_between
from app.common.errors import PreconditionError

logger = logging.getLogger(__name__)


def classify_degrees(g: Graph, m: int) -> Tuple[Set[int], Set[int]]:
    """L = vertices of degree >= m; R = vertices with at least four neighbours in L."""
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    degrees = g.degrees()
    high = set(int(v) for v in np.flatnonzero(degrees >= m))
    r_set = {v for v in g.vertices() if sum(1 for w in g.adjacency[v] if w in high) >= 4}
    return high, r_set


def degree_diagnostics(g: Graph, m: int) -> DegreeDiagnostics:
    l_set, r_set = classify_degrees(g, m)
    n = max(g.vertex_count, 1)
    return DegreeDiagnostics(
        m=m,
        l_size=len(l_set),
        r_size=len(r_set),
        r_ratio=len(r_set) / m ** 0.25,
        l_ratio=len(l_set) / (n / math.sqrt(m)),
    )


def _star(g: Graph, x: int, leaves: List[int], max_leg_len: int, l_set: Set[int]) -> NiceSpider:
    z1, z2, z3 = leaves
    spider = NiceSpider(
        center=x,
        leaves=(z1, z2, z3),
        legs=tuple(Path(vertices=(x, z)) for z in (z1, z2, z3)),
        max_leg_len=max_leg_len,
    )
    return validate_spider(g, spider, l_set)


def _stretched(g: Graph, x: int, l_set: Set[int], used: Set[int], max_leg_len: int) -> Optional[NiceSpider]:
    """Spider at x: z2 an L-neighbour, z1 and z3 reached by disjoint BFS legs."""
    near = [w for w in g.adjacency[x] if w in l_set and w not in used]
    for z2 in near:
        blocked = used | {x, z2}
        legs: List[List[int]] = []
        for _ in range(2):
            targets = l_set - blocked
            starts = [w for w in g.adjacency[x] if w not in blocked]
            if not targets or not starts:
                break
            route = shortest_path_between(g, starts, targets, blocked=blocked, limit=max_leg_len - 1)
            if route is None:
                break
            legs.append([x] + route)
            blocked = blocked | set(route)
        if len(legs) == 2:
            first, third = legs
            spider = NiceSpider(
                center=x,
                leaves=(first[-1], z2, third[-1]),
                legs=(Path(vertices=tuple(first)), Path(vertices=(x, z2)), Path(vertices=tuple(third))),
                max_leg_len=max_leg_len,
            )
            return validate_spider(g, spider, l_set)
    return None


def find_nice_spiders(
    g: Graph,
    l_set: Collection[int],
    forbidden: Collection[int] = (),
    max_leg_len: int = 2,
    want: Optional[int] = None,
) -> List[NiceSpider]:
    """
    Pairwise disjoint nice spiders avoiding `forbidden`.

    A greedy maximal packing of 3-stars (centers with three free L-neighbours,
    lowest ids first) comes first; leg-stretched spiders found by BFS within
    max_leg_len fill up afterwards. Stops once `want` spiders are found.
    """
    members = set(l_set)
    used: Set[int] = set(forbidden)
    spiders: List[NiceSpider] = []
    if not members or max_leg_len < 1:
        return spiders

    def done() -> bool:
        return want is not None and len(spiders) >= want

    for x in g.vertices():
        if done():
            break
        if x in used:
            continue
        leaves = [w for w in g.adjacency[x] if w in members and w not in used][:3]
        if len(leaves) == 3:
            spider = _star(g, x, leaves, max_leg_len, members)
            spiders.append(spider)
            used |= spider.vertices()
    stars = len(spiders)

    if max_leg_len >= 2:
        for x in g.vertices():
            if done():
                break
            if x in used:
                continue
            spider = _stretched(g, x, members, used, max_leg_len)
            if spider is not None:
                spiders.append(spider)
                used |= spider.vertices()
    logger.debug(f"[SPIDERS] {stars} stars, {len(spiders) - stars} stretched")
    return spiders


def lift_spider(g: Graph, h: Graph, spider: NiceSpider) -> NiceSpider:
    """Re-express a spider found in a subgraph h of g in g's vertex ids."""
    index = g.local_index()

    def up(v: int) -> int:
        return index[h.labels[v]]

    lifted = NiceSpider(
        center=up(spider.center),
        leaves=tuple(up(z) for z in spider.leaves),
        legs=tuple(Path(vertices=tuple(up(v) for v in leg.vertices)) for leg in spider.legs),
        max_leg_len=spider.max_leg_len,
    )
    return validate_spider(g, lifted)
