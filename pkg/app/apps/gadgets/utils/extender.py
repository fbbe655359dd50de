"""
Cycle extender construction
Core, interlaced cycle, cleanup, long cycle, extension, shortening, anchors, routing, assembly
"""
import logging
from typing import Callable, Collection, List, Optional, Sequence, Tuple, TypeVar

from app.apps.cycles.models import InterlacedCycle
from app.apps.cycles.utils.extend import extend_via_disjoint_paths
from app.apps.cycles.utils.interlaced import compact_interlaced_cycle, find_interlaced_cycle
from app.apps.cycles.utils.long_cycle import find_long_cycle
from app.apps.cycles.utils.shorten import shorten_chorded_cycle
from app.apps.expander.utils.clean import clean_for_expansion
from app.apps.expander.utils.connect import find_low_diameter_set
from app.apps.gadgets.models import CycleExtender, GadgetSizeParams, RoutingResult
from app.apps.gadgets.utils.routing import route_to_anchor_sets
from app.apps.gadgets.utils.validate import validate_extender
from app.apps.graph.models import ChordedCycle, Cycle, Graph, Path, normalize_edge
from app.apps.graph.utils.chords import chords_of
from app.apps.graph.utils.structure import min_degree_core
from app.apps.graph.utils.traversal import bfs_parents, connected_components, is_connected
from app.common.errors import ChordError, PreconditionError, SearchFailure, StageFailure

logger = logging.getLogger(__name__)

T = TypeVar("T")

STAGES = (
    "core", "interlace", "clean", "long-cycle", "extend",
    "shorten", "anchors", "route", "assemble",
)


def _stage(name: str, fn: Callable[[], T]) -> T:
    try:
        return fn()
    except StageFailure:
        raise
    except ChordError as e:
        logger.info(f"[EXTENDER] stage {name} failed: {e.message}")
        raise StageFailure(name, e) from e


def _core(h: Graph, degree: int) -> Graph:
    core = min_degree_core(h, degree)
    if core.vertex_count == 0:
        raise SearchFailure(f"min-degree-{degree} core is empty")
    biggest = max(connected_components(core), key=len)
    return core.induced_subgraph(biggest)


def _interlaced_in(h: Graph, core: Graph, params: GadgetSizeParams) -> InterlacedCycle:
    found = find_interlaced_cycle(core, budget=params.search_budget, seed=params.seed)
    found = compact_interlaced_cycle(core, found)
    vertices = h.embed(core, found.cycle.vertices)
    mapping = dict(zip(found.cycle.vertices, vertices))
    (a, b), (c, d) = found.pair
    return InterlacedCycle(
        chorded=chords_of(h, Cycle(vertices=tuple(vertices))),
        pair=((mapping[a], mapping[b]), (mapping[c], mapping[d])),
    )


def _long_cycle_in(h: Graph, remainder: Graph, params: GadgetSizeParams) -> Cycle:
    if remainder.vertex_count == 0:
        raise SearchFailure("nothing left after cleanup")
    biggest = max(connected_components(remainder), key=len)
    piece = remainder.induced_subgraph(biggest)
    found = find_long_cycle(piece, min_len=params.shorten_lo, budget=params.search_budget, seed=params.seed)
    return Cycle(vertices=tuple(h.embed(piece, found.cycle.vertices)))


def _shortened(h: Graph, q0: ChordedCycle, params: GadgetSizeParams) -> ChordedCycle:
    if q0.length <= params.max_cycle_len:
        return q0
    result = shorten_chorded_cycle(h, q0, params.shorten_lo, params.max_cycle_len)
    if result.flagged:
        raise SearchFailure(f"could not shorten below {params.max_cycle_len}, stuck at {result.chorded.length}")
    return result.chorded


def _anchors(h: Graph, q: ChordedCycle, params: GadgetSizeParams) -> List[List[int]]:
    avoid = set(q.cycle.vertices)
    found: List[List[int]] = []
    for _ in range(3):
        anchor = find_low_diameter_set(h, 2 * params.anchor_size, params.diameter, avoid=avoid)
        found.append(anchor)
        avoid |= set(anchor)
    return found


def _trim_anchor(h: Graph, anchor: Sequence[int], root: int, size: int) -> Tuple[Tuple[int, ...], int]:
    """First `size` vertices of the BFS order of G[anchor] from root, and their depth."""
    parent, depth = bfs_parents(h, [root], allowed=set(anchor))
    order = sorted(parent, key=lambda v: (depth[v], v))[:size]
    if len(order) < size:
        raise SearchFailure(f"anchor component holds {len(order)} < {size} vertices")
    return tuple(sorted(order)), max(depth[v] for v in order)


def _assemble(h: Graph, q: ChordedCycle, routed: RoutingResult, params: GadgetSizeParams) -> CycleExtender:
    """
    The chord ab splits Q into arcs X (holding both route starts) and Y.
    Deleting the X-stretch strictly between the starts leaves Y closed by ab,
    with P1 = a..u + route and P2 = b..v + route.
    """
    a, b = routed.chord
    cycle = list(q.cycle.vertices)
    ia = cycle.index(a)
    order = cycle[ia:] + cycle[:ia]
    jb = order.index(b)
    forward = order[: jb + 1]  # a .. b
    backward = [a] + order[:jb - 1:-1]  # a .. b the other way
    u, v = routed.p_i.first, routed.p_j.first
    if u in forward and v in forward:
        x_arc, y_arc = forward, backward
    else:
        x_arc, y_arc = backward, forward
    route_u, route_v = routed.p_i, routed.p_j
    anchor_u, anchor_v = routed.a_i_prime, routed.a_j_prime
    if x_arc.index(u) > x_arc.index(v):
        u, v = v, u
        route_u, route_v = route_v, route_u
        anchor_u, anchor_v = anchor_v, anchor_u
    pu, pv = x_arc.index(u), x_arc.index(v)

    p1 = Path(vertices=tuple(x_arc[: pu + 1]) + route_u.vertices[1:])
    p2 = Path(vertices=tuple(reversed(x_arc[pv:])) + route_v.vertices[1:])
    a1, depth1 = _trim_anchor(h, anchor_u, p1.last, params.anchor_size)
    a2, depth2 = _trim_anchor(h, anchor_v, p2.last, params.anchor_size)
    ext = CycleExtender(
        cycle=Cycle(vertices=tuple(y_arc)),
        p1=p1,
        p2=p2,
        a1=a1,
        a2=a2,
        anchor_size=params.anchor_size,
        max_cycle_len=params.max_cycle_len,
        max_path_len=params.max_path_len + params.max_cycle_len,
        anchor_depths=(depth1, depth2),
    )
    return validate_extender(h, ext)


def lift_extender(g: Graph, h: Graph, ext: CycleExtender) -> CycleExtender:
    """Re-express an extender found in a subgraph h of g in g's vertex ids."""
    def up(vs: Sequence[int]) -> Tuple[int, ...]:
        return tuple(g.embed(h, vs))

    lifted = ext.model_copy(update={
        "cycle": Cycle(vertices=up(ext.cycle.vertices)),
        "p1": Path(vertices=up(ext.p1.vertices)),
        "p2": Path(vertices=up(ext.p2.vertices)),
        "a1": tuple(sorted(up(ext.a1))),
        "a2": tuple(sorted(up(ext.a2))),
    })
    return validate_extender(g, lifted)


def build_cycle_extender(
    g: Graph,
    forbidden: Collection[int] = (),
    params: Optional[GadgetSizeParams] = None,
) -> CycleExtender:
    """
    Cycle extender in g - forbidden.

    Runs the construction stage by stage: min-degree core, a compact
    interlaced cycle C, cleanup of C for expansion, a long cycle C' in the
    cleaned remainder, extension of C through C', shortening into
    [shorten_lo, max_cycle_len], three low-diameter anchors of twice the
    anchor size, same-side routing and assembly. Every invariant of the
    result is checked in g.

    Raises:
        PreconditionError: g - forbidden empty or disconnected
        StageFailure: a stage failed; `stage` names it and `partial` holds the
            most-chorded cycle built before the failure, in g's ids
    """
    params = params or GadgetSizeParams()
    blocked = set(forbidden)
    h = g.without(blocked)
    if h.vertex_count == 0 or not is_connected(h):
        raise PreconditionError("g - forbidden must be non-empty and connected")

    best: Optional[ChordedCycle] = None

    def keep(cc: ChordedCycle) -> None:
        nonlocal best
        if best is None or cc.chord_count > best.chord_count:
            best = cc

    try:
        core = _stage("core", lambda: _core(h, params.core_degree))
        ic = _stage("interlace", lambda: _interlaced_in(h, core, params))
        keep(ic.chorded)
        ic_core = core.embed(h, ic.cycle.vertices)
        _, remainder = _stage("clean", lambda: clean_for_expansion(
            core, ic_core, params.clean_alpha, override=True, budget=params.search_budget, seed=params.seed,
        ))
        c_prime = _stage("long-cycle", lambda: _long_cycle_in(h, remainder, params))
        q0 = _stage("extend", lambda: extend_via_disjoint_paths(h, ic, c_prime))
        keep(q0)
        q = _stage("shorten", lambda: _shortened(h, q0, params))
        keep(q)
        anchors = _stage("anchors", lambda: _anchors(h, q, params))
        routed = _stage("route", lambda: route_to_anchor_sets(
            h, q, anchors, params.max_path_len, params.threshold,
        ))
        ext = _stage("assemble", lambda: _assemble(h, q, routed, params))
    except StageFailure as e:
        if best is not None:
            e.partial = chords_of(g, Cycle(vertices=tuple(g.embed(h, best.cycle.vertices))))
        raise
    ext = lift_extender(g, h, ext)
    logger.info(
        f"[EXTENDER] cycle {ext.cycle.length}, paths {ext.p1.length}/{ext.p2.length}, "
        f"anchors {len(ext.a1)}/{len(ext.a2)}, chord {normalize_edge(*ext.chord)}"
    )
    return ext
