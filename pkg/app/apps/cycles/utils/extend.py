"""
Cycle extension through two disjoint paths
"""
import logging
import math
from typing import Iterator, List, Optional, Sequence, Union

from app.apps.cycles.models import InterlacedCycle
from app.apps.cycles.utils.disjoint_paths import two_disjoint_paths
from app.apps.graph.models import ChordedCycle, Cycle, Edge, Graph
from app.apps.graph.utils.chords import chord_edges, reverify
from app.common.errors import PreconditionError, SearchFailure, verify

logger = logging.getLogger(__name__)


def _walk(vertices: Sequence[int], start: int, stop: int, step: int) -> List[int]:
    """Positions start..stop inclusive walking the cycle in direction step (+1 or -1)."""
    size = len(vertices)
    out = [start]
    while out[-1] != stop:
        out.append((out[-1] + step) % size)
    return out


def _routes(cycle: Sequence[int], chords: Sequence[Edge], q: int, q2: int) -> Iterator[List[int]]:
    """
    Simple q -> q2 routes inside the cycle plus at most one chord used as an edge.

    The two arcs come first; then, for each chord xy, the route that walks
    from q to x, jumps to y and walks on to q2.
    """
    pos = {v: i for i, v in enumerate(cycle)}
    a, b = pos[q], pos[q2]
    for step in (1, -1):
        yield [cycle[i] for i in _walk(cycle, a, b, step)]
    for x, y in chords:
        for u, v in ((x, y), (y, x)):
            for first in (1, -1):
                head = _walk(cycle, a, pos[u], first)
                if b in head:
                    continue
                for second in (1, -1):
                    tail = _walk(cycle, pos[v], b, second)
                    if set(head) & set(tail):
                        continue
                    yield [cycle[i] for i in head + tail]


def extend_via_disjoint_paths(
    g: Graph,
    ic: Union[InterlacedCycle, ChordedCycle],
    c_prime: Cycle,
) -> ChordedCycle:
    """
    Chorded cycle through the longer half of c_prime.

    Two disjoint paths P1: p -> q, P2: p' -> q' join c_prime to the chorded
    cycle C. The result walks the longer p..p' arc of c_prime, P2, a route
    from q' back to q inside C, and P1 reversed. Candidate routes are the two
    arcs of C and arcs that use one chord of C as an edge: when q and q' lie
    on the same side of a chord the plain arc keeps it, and when every chord
    separates them an interlacing partner is bridged instead. The route whose
    cycle carries the most chords wins.

    Raises:
        PreconditionError: cycles share a vertex
        SearchFailure: disjoint paths do not exist, or no route keeps a chord
    """
    chorded = ic.chorded if isinstance(ic, InterlacedCycle) else ic
    if chorded.chord_count < 1:
        raise PreconditionError("the cycle to extend needs a chord")
    base = list(chorded.cycle.vertices)
    other = list(c_prime.vertices)
    if set(base) & set(other):
        raise PreconditionError("cycles must be vertex-disjoint")
    c_prime.validate_in(g)

    p1, p2 = two_disjoint_paths(g, other, base)
    p, q = p1.first, p1.last
    p2_start, q2 = p2.first, p2.last

    # longer arc of c_prime from p to p2_start
    ia, ib = other.index(p), other.index(p2_start)
    forward = _walk(other, ia, ib, 1)
    backward = _walk(other, ia, ib, -1)
    arc = [other[i] for i in (forward if len(forward) >= len(backward) else backward)]

    best: Optional[List[int]] = None
    best_chords: List[Edge] = []
    for route in _routes(base, chorded.chords, q2, q):
        vertices = arc + list(p2.vertices[1:]) + route[1:] + list(reversed(p1.vertices))[1:-1]
        if len(set(vertices)) != len(vertices):
            continue
        chords = chord_edges(g, vertices)
        if len(chords) > len(best_chords) or best is None:
            best, best_chords = vertices, chords
    if best is None or not best_chords:
        raise SearchFailure("no route through the chorded cycle keeps a chord")

    result = reverify(g, ChordedCycle(cycle=Cycle(vertices=tuple(best)), chords=tuple(best_chords)))
    kept = len(set(other) & set(best))
    verify(kept >= math.ceil(len(other) / 2), "extension lost more than half of c_prime", kept=kept)
    verify(result.chord_count >= 1, "extended cycle has no chord")
    logger.debug(f"[EXTEND] {len(other)}-cycle extended to length {result.length} with {result.chord_count} chords")
    return result
