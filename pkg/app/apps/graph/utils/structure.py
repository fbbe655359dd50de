"""
Structural graph operations: degree peeling, block-cut decomposition, girth
"""
import logging
from collections import deque
from typing import Dict, List, Optional

import networkx as nx
from pydantic import BaseModel

from app.apps.graph.models import BlockCutTree, Graph, normalize_edge
from app.apps.graph.utils.c4 import is_c4_free
from app.apps.graph.utils.traversal import connected_components

logger = logging.getLogger(__name__)


def min_degree_core(g: Graph, d: int) -> Graph:
    """
    Unique maximal induced subgraph with minimum degree >= d.

    Iteratively deletes vertices of degree < d; the result may be empty.
    """
    if d <= 0:
        return g.induced_subgraph(g.vertices())
    degree = [len(row) for row in g.adjacency]
    removed = [False] * g.vertex_count
    queue = deque(v for v in g.vertices() if degree[v] < d)
    for v in queue:
        removed[v] = True
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if removed[w]:
                continue
            degree[w] -= 1
            if degree[w] < d:
                removed[w] = True
                queue.append(w)
    core = g.induced_subgraph(v for v in g.vertices() if not removed[v])
    logger.debug(f"{d}-core of {g}: {core}")
    return core


def block_cut_tree(g: Graph) -> BlockCutTree:
    """
    Block-cut decomposition: blocks partition the edge set, and a vertex is a
    cut vertex iff it lies in at least two blocks. Isolated vertices belong to
    no block.
    """
    nx_graph = g.to_networkx()
    edge_blocks = []
    for component_edges in nx.biconnected_component_edges(nx_graph):
        edges = tuple(sorted(normalize_edge(u, v) for u, v in component_edges))
        vertices = tuple(sorted({x for e in edges for x in e}))
        edge_blocks.append((vertices, edges))
    edge_blocks.sort()

    cut_vertices = tuple(sorted(nx.articulation_points(nx_graph)))
    cut_set = set(cut_vertices)
    tree_edges = tuple(
        (i, v) for i, (vertices, _) in enumerate(edge_blocks) for v in vertices if v in cut_set
    )
    return BlockCutTree(
        blocks=tuple(vertices for vertices, _ in edge_blocks),
        block_edges=tuple(edges for _, edges in edge_blocks),
        cut_vertices=cut_vertices,
        tree_edges=tree_edges,
    )


def girth(g: Graph, limit: Optional[int] = None) -> Optional[int]:
    """
    Length of a shortest cycle (BFS from every vertex); None for forests.

    With `limit`, stops early once a cycle of length <= limit is found.
    """
    best: Optional[int] = None
    for root in g.vertices():
        dist: Dict[int, int] = {root: 0}
        parent: Dict[int, int] = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
        if best is not None and limit is not None and best <= limit:
            return best
        if best == 3:
            return 3
    return best


def has_triangle(g: Graph) -> bool:
    sets = g.neighbor_sets
    for u, v in g.edges():
        if len(g.adjacency[u]) > len(g.adjacency[v]):
            u, v = v, u
        if any(w in sets[v] for w in g.adjacency[u]):
            return True
    return False


class GraphSummary(BaseModel):
    n: int
    m: int
    min_degree: int
    max_degree: int
    average_degree: float
    girth_at_most_4: bool


def graph_summary(g: Graph) -> GraphSummary:
    short = has_triangle(g) or not is_c4_free(g).free
    return GraphSummary(
        n=g.vertex_count,
        m=g.edge_count,
        min_degree=g.min_degree(),
        max_degree=g.max_degree(),
        average_degree=round(g.average_degree(), 6),
        girth_at_most_4=short,
    )


def two_core_components(g: Graph) -> List[Graph]:
    """Components of the 2-core, largest first; empty iff g is a forest."""
    core = min_degree_core(g, 2)
    parts = [core.induced_subgraph(c) for c in connected_components(core)]
    return sorted(parts, key=lambda h: (-h.vertex_count, h.labels))
