"""
Two vertex-disjoint paths between vertex sets via unit vertex capacities (Menger)
"""
import logging
from typing import Collection, Dict, List, Optional, Set, Tuple

import networkx as nx

from app.apps.graph.models import Graph, Path
from app.apps.graph.utils.traversal import shortest_path_between
from app.common.errors import PreconditionError, SearchFailure, verify

logger = logging.getLogger(__name__)

SOURCE = -1
SINK = -2
WIDE = 4  # more than the flow value ever needed


def _inn(v: int) -> int:
    return 2 * v


def _out(v: int) -> int:
    return 2 * v + 1


def _split_network(g: Graph, s: Set[int], t: Set[int]) -> nx.DiGraph:
    """
    Vertex-split flow network. Non-terminal vertices carry capacity 1; a
    terminal carries 1 when its set has two or more vertices and 2 when it is
    the only one, so a singleton terminal may be shared by both paths. Arcs
    never enter s or leave t, which keeps paths internally clear of s and t.
    """
    s_cap = 1 if len(s) >= 2 else 2
    t_cap = 1 if len(t) >= 2 else 2
    network = nx.DiGraph()
    network.add_nodes_from([SOURCE, SINK])
    for v in g.vertices():
        cap = s_cap if v in s else t_cap if v in t else 1
        network.add_edge(_inn(v), _out(v), capacity=cap)
    for x in s:
        network.add_edge(SOURCE, _inn(x), capacity=s_cap)
    for y in t:
        network.add_edge(_out(y), SINK, capacity=t_cap)
    for u, v in g.edges():
        for a, b in ((u, v), (v, u)):
            if b in s or a in t:
                continue
            # a direct edge between two singleton terminals must not carry both paths
            cap = 1 if a in s and b in t else WIDE
            network.add_edge(_out(a), _inn(b), capacity=cap)
    return network


def _decompose(flow: Dict[int, Dict[int, int]]) -> List[int]:
    """Peel one SOURCE-SINK walk off the flow, removing any loops it closes."""
    walk = [SOURCE]
    seen = {SOURCE: 0}
    node = SOURCE
    while node != SINK:
        nxt = min(w for w, f in flow[node].items() if f > 0)
        flow[node][nxt] -= 1
        if nxt in seen:
            cut = seen[nxt]
            for dropped in walk[cut + 1:]:
                del seen[dropped]
            walk = walk[: cut + 1]
        else:
            seen[nxt] = len(walk)
            walk.append(nxt)
        node = nxt
    vertices: List[int] = []
    for node in walk[1:-1]:
        v = node // 2
        if not vertices or vertices[-1] != v:
            vertices.append(v)
    return vertices


def _cut_vertex(network: nx.DiGraph) -> Optional[int]:
    _, (reachable, _) = nx.minimum_cut(network, SOURCE, SINK)
    for u in sorted(reachable):
        for w, data in network[u].items():
            if w in reachable or data["capacity"] != 1:
                continue
            if u == SOURCE:
                return w // 2
            if w == SINK or (u % 2 == 0 and w == u + 1):
                return u // 2
    return None


def two_disjoint_paths(g: Graph, s: Collection[int], t: Collection[int]) -> Tuple[Path, Path]:
    """
    Two vertex-disjoint paths from s to t, internally avoiding s and t.

    A singleton s or t is shared by both paths (fan form). Failure carries the
    separating cut vertex as its certificate, or None when s and t are
    disconnected or only joined by a single direct edge.

    Raises:
        PreconditionError: s and t overlap or one is empty
        SearchFailure: fewer than two such paths exist
    """
    s_set, t_set = set(s), set(t)
    if not s_set or not t_set:
        raise PreconditionError("two_disjoint_paths needs non-empty s and t")
    if s_set & t_set:
        raise PreconditionError("s and t must be disjoint")

    network = _split_network(g, s_set, t_set)
    value, flow = nx.maximum_flow(network, SOURCE, SINK)
    if value < 2:
        cut = _cut_vertex(network) if value == 1 else None
        if cut is not None:
            reach = shortest_path_between(g, s_set - {cut}, t_set - {cut}, blocked={cut})
            verify(reach is None, "reported cut vertex does not separate s from t", cut=cut)
        elif value == 0:
            verify(shortest_path_between(g, s_set, t_set) is None, "zero flow between connected sets")
        logger.debug(f"[MENGER] flow value {value}, cut vertex {cut}")
        raise SearchFailure(
            f"fewer than two disjoint paths (flow value {value})",
            certificate=cut,
            flow_value=value,
        )

    first = _decompose(flow)
    second = _decompose(flow)
    shared = set(first) & set(second)
    allowed_shared = {v for v in shared if (v in s_set and len(s_set) == 1) or (v in t_set and len(t_set) == 1)}
    verify(shared == allowed_shared, "disjoint paths share a vertex", shared=sorted(shared))
    paths = (Path(vertices=tuple(first)), Path(vertices=tuple(second)))
    for p in paths:
        p.validate_in(g)
    return paths
