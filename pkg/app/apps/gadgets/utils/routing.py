"""
Routing from a chorded cycle into anchor sets
Paths dodge the dangerous vertices of every anchor's spanning tree so each anchor keeps a large root component
"""
import logging
from typing import Collection, Dict, List, Optional, Sequence, Set, Tuple

from app.apps.expander.utils.connect import connect_avoiding
from app.apps.gadgets.models import DangerousSet, RootedTree, RoutingResult
from app.apps.graph.models import ChordedCycle, Edge, Graph, Path
from app.apps.graph.utils.traversal import bfs_parents, is_connected
from app.common.errors import PreconditionError, SearchFailure, verify

logger = logging.getLogger(__name__)


def dangerous_vertices(tree: RootedTree, threshold: int) -> DangerousSet:
    """
    Non-root, non-leaf vertices whose deletion cuts at least `threshold`
    vertices off the root. One bottom-up subtree-size pass.
    """
    if threshold < 1:
        raise PreconditionError(f"threshold must be positive, got {threshold}")
    order = tree.depth_order()
    kids = tree.children()
    size: Dict[int, int] = {}
    for v in reversed(order):
        size[v] = 1 + sum(size[c] for c in kids[v])
    dangerous = tuple(sorted(
        v for v in order
        if v != tree.root and kids[v] and size[v] - 1 >= threshold
    ))
    return DangerousSet(tree=tree, threshold=threshold, dangerous=dangerous)


def anchor_tree(g: Graph, anchor: Collection[int]) -> RootedTree:
    """BFS tree of G[anchor] rooted at a vertex of least eccentricity (lowest id on ties)."""
    members = set(anchor)
    best: Optional[Tuple[int, int, Dict[int, Optional[int]]]] = None
    for root in sorted(members):
        parent, depth = bfs_parents(g, [root], allowed=members)
        key = (max(depth.values()), root)
        if best is None or key < best[:2]:
            best = (key[0], root, parent)
    _, root, parent = best
    return RootedTree(root=root, parent=parent)


def _root_component(tree: RootedTree, removed: Set[int]) -> Set[int]:
    kids = tree.children()
    if tree.root in removed:
        return set()
    out = {tree.root}
    stack = [tree.root]
    while stack:
        v = stack.pop()
        for c in kids[v]:
            if c not in removed:
                out.add(c)
                stack.append(c)
    return out


def _closed_arcs(cycle: Sequence[int], chord: Edge) -> Tuple[Set[int], Set[int]]:
    """The two arcs between the chord ends, ends included in both."""
    pos = {v: i for i, v in enumerate(cycle)}
    i, j = sorted((pos[chord[0]], pos[chord[1]]))
    return set(cycle[i:j + 1]), set(cycle[j:]) | set(cycle[:i + 1])


def route_to_anchor_sets(
    g: Graph,
    cc: ChordedCycle,
    anchors: Sequence[Collection[int]],
    max_path_len: int,
    danger_threshold: int,
    chord: Optional[Edge] = None,
) -> RoutingResult:
    """
    Two disjoint routes from the cycle into two of three anchors, leaving the
    cycle on the same side of a designated chord.

    Each anchor gets a BFS spanning tree; routes are found one after another
    ending at the anchor's root, avoiding earlier routes and every dangerous
    vertex. An anchor keeps the root component of its tree after the route
    vertices are deleted. Any two of three starts share a closed arc of the
    chord.

    Raises:
        PreconditionError: anchors overlap, touch the cycle, or are disconnected
        SearchFailure: fewer than three disjoint routes, or an anchor shrank below half
    """
    if len(anchors) != 3:
        raise PreconditionError("routing needs exactly three anchors")
    sets = [set(a) for a in anchors]
    on_cycle = set(cc.cycle.vertices)
    for k, a in enumerate(sets):
        if not a:
            raise PreconditionError(f"anchor {k} is empty")
        if a & on_cycle:
            raise PreconditionError(f"anchor {k} meets the cycle")
        for other in sets[k + 1:]:
            if a & other:
                raise PreconditionError("anchors must be pairwise disjoint")
        if not is_connected(g, a):
            raise PreconditionError(f"anchor {k} does not induce a connected subgraph")
    if not cc.chords:
        raise PreconditionError("routing needs a cycle with a chord")
    chord = chord if chord is not None else cc.chords[0]

    trees = [anchor_tree(g, a) for a in sets]
    danger = [set(dangerous_vertices(t, danger_threshold).dangerous) for t in trees]
    all_danger = set().union(*danger)
    roots = [t.root for t in trees]

    used: Set[int] = set()
    paths: List[Path] = []
    for k in range(3):
        sources = on_cycle - used
        target = {roots[k]}
        blocked = (used | all_danger | (on_cycle - sources) | set(roots)) - target
        blocked -= sources
        if not sources:
            raise SearchFailure("no free cycle vertex left to route from")
        try:
            path = connect_avoiding(g, sources, target, blocked, max_length=max_path_len)
        except SearchFailure as e:
            raise SearchFailure(f"only {k} of three disjoint routes found: {e.message}", routed=k) from e
        paths.append(path)
        used |= set(path.vertices)

    survivors: List[Set[int]] = []
    for k in range(3):
        removed = (used - {roots[k]}) & sets[k]
        kept = _root_component(trees[k], removed)
        loss_bound = len(sets[k]) - len(removed) * danger_threshold
        verify(len(kept) >= loss_bound, "anchor lost more than the dangerous-vertex bound allows", anchor=k)
        survivors.append(kept)

    cycle = list(cc.cycle.vertices)
    arcs = _closed_arcs(cycle, chord)
    starts = [p.first for p in paths]
    pair: Optional[Tuple[int, int]] = None
    for i in range(3):
        for j in range(i + 1, 3):
            if pair is None and any(starts[i] in arc and starts[j] in arc for arc in arcs):
                pair = (i, j)
    verify(pair is not None, "three cycle starts yet no two on one side of the chord")
    i, j = pair
    for k in (i, j):
        if 2 * len(survivors[k]) < len(sets[k]):
            raise SearchFailure(f"anchor {k} kept {len(survivors[k])} of {len(sets[k])} vertices")
    logger.debug(f"[ROUTE] anchors {i},{j} via lengths {paths[i].length},{paths[j].length}")
    return RoutingResult(
        i=i,
        j=j,
        a_i_prime=tuple(sorted(survivors[i])),
        a_j_prime=tuple(sorted(survivors[j])),
        p_i=paths[i],
        p_j=paths[j],
        chord=chord,
    )
