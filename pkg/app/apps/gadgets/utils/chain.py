"""
Chaining gadgets into one cycle
Main pieces in nearest-neighbour order, then every spider's z2 visit, joined by short disjoint links
"""
import logging
from typing import Callable, List, Optional, Sequence, Set, Tuple, Union

from app.apps.gadgets.models import ChainResult, CycleExtender, NiceSpider
from app.apps.gadgets.utils.validate import validate_extender, validate_spider
from app.apps.graph.models import Cycle, Edge, Graph
from app.apps.graph.utils.chords import chords_of
from app.apps.graph.utils.traversal import bfs_distances, bfs_parents, shortest_path_between, walk_to_root
from app.common.errors import PreconditionError, SearchFailure, verify

logger = logging.getLogger(__name__)

Gadget = Union[NiceSpider, CycleExtender]


class _Piece:
    """A stretch of the final cycle: entered at one of `entries`, left at one of `exits`."""

    def __init__(
        self,
        name: str,
        entries: Sequence[int],
        exits: Sequence[int],
        body: Callable[[int, int], List[int]],
    ):
        self.name = name
        self.entries = list(entries)
        self.exits = list(exits)
        self.body = body
        self.entry: Optional[int] = None
        self.exit: Optional[int] = None


def _inside_path(g: Graph, within: Sequence[int], start: int, stop: int) -> List[int]:
    parent, _ = bfs_parents(g, [start], allowed=set(within))
    return list(reversed(walk_to_root(parent, stop)))


def _long_way(cycle: Sequence[int], a: int, b: int) -> List[int]:
    """Cycle vertices from a to b avoiding the edge ab."""
    i = list(cycle).index(a)
    order = list(cycle[i:]) + list(cycle[:i])
    if order[1] == b:
        order = [a] + order[:0:-1]
    return order


def _spider_pieces(g: Graph, s: NiceSpider, reserved: Set[int]) -> Tuple[_Piece, _Piece]:
    z1, z2, z3 = s.leaves
    route = list(reversed(s.legs[0].vertices)) + list(s.legs[2].vertices[1:])
    main = _Piece(f"spider@{s.center}", [z1], [z3], lambda entry, exit_: route)
    ports = sorted(w for w in g.adjacency[z2] if w not in reserved)
    left, right = ports[0::2], ports[1::2]
    visit = _Piece(f"z2@{z2}", left, right, lambda entry, exit_: [entry, z2, exit_])
    return main, visit


def _extender_piece(g: Graph, e: CycleExtender) -> _Piece:
    a, b = e.p1.first, e.p2.first
    middle = _long_way(e.cycle.vertices, a, b)

    def body(entry: int, exit_: int) -> List[int]:
        out = _inside_path(g, e.a1, entry, e.p1.last)
        out += list(reversed(e.p1.vertices))[1:]
        out += middle[1:]
        out += list(e.p2.vertices[1:])
        out += _inside_path(g, e.a2, e.p2.last, exit_)[1:]
        return out

    return _Piece(f"extender@{a}-{b}", e.a1, e.a2, body)


def _order(g: Graph, gadgets: List[Gadget], pieces: List[_Piece]) -> List[int]:
    """Nearest-neighbour tour over main pieces by BFS distance from exits to entries."""
    remaining = list(range(1, len(gadgets)))
    tour = [0] if gadgets else []
    while remaining:
        dist = bfs_distances(g, pieces[tour[-1]].exits)
        far = g.vertex_count + 1

        def gap(k: int) -> Tuple[int, int]:
            return (min((dist.get(v, far) for v in pieces[k].entries), default=far), k)

        nxt = min(remaining, key=gap)
        tour.append(nxt)
        remaining.remove(nxt)
    return tour


def _free_terminals(g: Graph, gadget: Gadget, reserved: Set[int]) -> int:
    if isinstance(gadget, NiceSpider):
        ends = set(gadget.leaves)
    else:
        ends = set(gadget.a1) | set(gadget.a2)
    return len(g.neighborhood(ends) - reserved)


def _try_chain(g: Graph, gadgets: List[Gadget], max_link_len: int) -> List[int]:
    reserved: Set[int] = set()
    for gadget in gadgets:
        reserved |= gadget.vertices()

    mains: List[_Piece] = []
    visits: List[Tuple[int, _Piece]] = []
    for k, gadget in enumerate(gadgets):
        if isinstance(gadget, NiceSpider):
            main, visit = _spider_pieces(g, gadget, reserved)
            mains.append(main)
            visits.append((k, visit))
        else:
            mains.append(_extender_piece(g, gadget))
    tour = _order(g, gadgets, mains)
    visit_of = dict(visits)
    pieces = [mains[k] for k in tour] + [visit_of[k] for k in tour if k in visit_of]

    protected: Set[int] = set()
    for piece in pieces:
        protected |= set(piece.entries) | set(piece.exits)

    used: Set[int] = set()
    links: List[List[int]] = []
    for k, piece in enumerate(pieces):
        nxt = pieces[(k + 1) % len(pieces)]
        sources = [v for v in piece.exits if v not in used]
        targets = {v for v in nxt.entries if v not in used}
        blocked = (reserved | protected | used) - set(sources) - targets
        link = None
        if sources and targets:
            link = shortest_path_between(g, sources, targets, blocked=blocked, limit=max_link_len)
        if link is None or len(link) < 2:
            raise SearchFailure(
                f"no link of length <= {max_link_len} from {piece.name} to {nxt.name}",
                link=f"{piece.name}->{nxt.name}",
            )
        piece.exit, nxt.entry = link[0], link[-1]
        used |= set(link)
        links.append(link)

    vertices: List[int] = []
    for piece, link in zip(pieces, links):
        vertices += piece.body(piece.entry, piece.exit)
        vertices += link[1:-1]
    return vertices


def chain_gadgets(
    g: Graph,
    spiders: Sequence[NiceSpider],
    extenders: Sequence[CycleExtender],
    max_link_len: int,
    retry_budget: int = 4,
) -> ChainResult:
    """
    One cycle through every gadget, each contributing a chord.

    Spiders are entered at z1 and left at z3, with z2 visited later between a
    left and a right half of its free neighbours; extenders are entered in A1
    and left from A2. A spider's chord is center-z2, an extender's is the
    cycle edge between its path attachments. On a failed link the gadget with
    the fewest free terminal neighbours is dropped and the chain retried.

    Raises:
        PreconditionError: gadgets overlap
        SearchFailure: nothing to chain, or a link failed with no retries left
    """
    gadgets: List[Gadget] = list(spiders) + list(extenders)
    if not gadgets:
        raise SearchFailure("nothing to chain")
    seen: Set[int] = set()
    for gadget in gadgets:
        if isinstance(gadget, NiceSpider):
            validate_spider(g, gadget)
        else:
            validate_extender(g, gadget)
        body = gadget.vertices()
        if body & seen:
            raise PreconditionError("gadgets must be pairwise vertex-disjoint")
        seen |= body

    dropped = 0
    while True:
        try:
            vertices = _try_chain(g, gadgets, max_link_len)
            break
        except SearchFailure as e:
            if dropped >= retry_budget or len(gadgets) <= 1:
                raise
            reserved = set().union(*(x.vertices() for x in gadgets))
            weakest = min(range(len(gadgets)), key=lambda k: (_free_terminals(g, gadgets[k], reserved), k))
            logger.info(f"[CHAIN] {e.message}; dropping gadget {weakest} and retrying")
            gadgets.pop(weakest)
            dropped += 1

    verify(len(set(vertices)) == len(vertices), "chained walk repeats a vertex")
    result = chords_of(g, Cycle(vertices=tuple(vertices)))
    designated: List[Edge] = [x.chord for x in gadgets]
    present = set(result.chords)
    verify(all(c in present for c in designated), "a designated chord is missing from the chained cycle")
    verify(result.chord_count >= len(gadgets), "fewer chords than gadgets")
    spiders_used = sum(1 for x in gadgets if isinstance(x, NiceSpider))
    logger.info(
        f"[CHAIN] cycle {result.length} with {result.chord_count} chords "
        f"from {len(gadgets)} gadgets ({dropped} dropped)"
    )
    return ChainResult(
        chorded=result,
        spiders_used=spiders_used,
        extenders_used=len(gadgets) - spiders_used,
        dropped=dropped,
        designated_chords=tuple(designated),
    )
