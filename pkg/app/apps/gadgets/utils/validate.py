"""
Gadget validators
Every spider and extender built anywhere passes through these checks
"""
from typing import Collection, List, Optional

from app.apps.gadgets.models import CycleExtender, NiceSpider
from app.apps.graph.models import Graph, Path
from app.apps.graph.utils.traversal import eccentricity_within, is_connected
from app.common.errors import VerificationError


def _in_graph(g: Graph, path: Path) -> bool:
    if any(v < 0 or v >= g.vertex_count for v in path.vertices):
        return False
    return all(g.has_edge(u, v) for u, v in zip(path.vertices, path.vertices[1:]))


def _fail(kind: str, problems: List[str]) -> None:
    if problems:
        raise VerificationError(f"invalid {kind}: " + "; ".join(problems), violations=problems)


def validate_spider(g: Graph, spider: NiceSpider, l_set: Optional[Collection[int]] = None) -> NiceSpider:
    """
    Check every spider invariant; `l_set` None skips the leaves-in-L check.

    Raises:
        VerificationError: listing each violated invariant
    """
    problems: List[str] = []
    x = spider.center
    if len(spider.legs) != 3 or len(spider.leaves) != 3:
        _fail("spider", ["a spider has exactly three legs"])
    if len(set(spider.leaves)) != 3 or x in spider.leaves:
        problems.append("leaves must be three distinct vertices other than the center")
    for k, (leg, leaf) in enumerate(zip(spider.legs, spider.leaves)):
        if leg.first != x or leg.last != leaf:
            problems.append(f"leg {k} does not run from the center to its leaf")
        if not _in_graph(g, leg):
            problems.append(f"leg {k} is not a path of the graph")
    seen = set()
    for leg in spider.legs:
        body = set(leg.vertices[1:])
        if body & seen:
            problems.append("legs share a vertex other than the center")
        seen |= body
    if spider.legs[1].length != 1:
        problems.append("leg to z2 must be a single edge")
    for k in (0, 2):
        if spider.legs[k].length > spider.max_leg_len:
            problems.append(f"leg {k} longer than {spider.max_leg_len}")
    if l_set is not None:
        members = set(l_set)
        if any(z not in members for z in spider.leaves):
            problems.append("every leaf must belong to L")
    _fail("spider", problems)
    return spider


def validate_extender(g: Graph, ext: CycleExtender) -> CycleExtender:
    """
    Check every extender invariant.

    Raises:
        VerificationError: listing each violated invariant
    """
    problems: List[str] = []
    cycle = ext.cycle
    on_cycle = set(cycle.vertices)
    if any(v < 0 or v >= g.vertex_count for v in on_cycle):
        _fail("extender", ["cycle vertex out of range"])
    if any(not g.has_edge(u, v) for u, v in cycle.edges()):
        problems.append("cycle is not a cycle of the graph")
    if cycle.length > ext.max_cycle_len:
        problems.append(f"cycle longer than {ext.max_cycle_len}")

    p1, p2 = ext.p1, ext.p2
    for name, p in (("p1", p1), ("p2", p2)):
        if not _in_graph(g, p):
            problems.append(f"{name} is not a path of the graph")
        if p.length > ext.max_path_len:
            problems.append(f"{name} longer than {ext.max_path_len}")
        if p.first not in on_cycle:
            problems.append(f"{name} does not start on the cycle")
        if set(p.vertices[1:]) & on_cycle:
            problems.append(f"{name} re-enters the cycle")
    if set(p1.vertices) & set(p2.vertices):
        problems.append("p1 and p2 share a vertex")
    if not cycle.consecutive(p1.first, p2.first):
        problems.append("path attachments are not consecutive on the cycle")

    a1, a2 = set(ext.a1), set(ext.a2)
    if p1.last not in a1 or p2.last not in a2:
        problems.append("anchors must hold the far path endpoints")
    if a1 & a2:
        problems.append("anchors overlap")
    body = on_cycle | set(p1.vertices) | set(p2.vertices)
    if (a1 & body) - {p1.last} or (a2 & body) - {p2.last}:
        problems.append("anchors touch the cycle or paths beyond the far endpoints")
    for name, anchor, end, depth in (("a1", a1, p1.last, ext.anchor_depths[0]), ("a2", a2, p2.last, ext.anchor_depths[1])):
        if len(anchor) != ext.anchor_size:
            problems.append(f"{name} has {len(anchor)} vertices, expected {ext.anchor_size}")
        if any(v < 0 or v >= g.vertex_count for v in anchor):
            problems.append(f"{name} has a vertex out of range")
            continue
        if not is_connected(g, anchor):
            problems.append(f"{name} does not induce a connected subgraph")
        elif end in anchor and eccentricity_within(g, end, anchor) > depth:
            problems.append(f"{name} deeper than its recorded depth {depth}")
    _fail("extender", problems)
    return ext
