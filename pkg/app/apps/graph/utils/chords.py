"""
Chord accounting
"""
from typing import Iterable, List, Sequence

from app.apps.graph.models import ChordedCycle, Cycle, Edge, Graph, normalize_edge
from app.common.errors import PreconditionError, VerificationError


def chord_edges(g: Graph, vertices: Sequence[int]) -> List[Edge]:
    """All host edges between non-consecutive vertices of the cyclic sequence."""
    pos = {v: i for i, v in enumerate(vertices)}
    size = len(vertices)
    chords: List[Edge] = []
    for v in vertices:
        i = pos[v]
        for w in g.adjacency[v]:
            if w <= v or w not in pos:
                continue
            gap = abs(pos[w] - i)
            if gap != 1 and gap != size - 1:
                chords.append((v, w))
    return sorted(chords)


def chords_of(g: Graph, c: Cycle) -> ChordedCycle:
    """
    Chorded view of a cycle: every edge of g between non-consecutive cycle vertices.

    Raises:
        PreconditionError: c is not a cycle of g
    """
    try:
        c.validate_in(g)
    except VerificationError as e:
        raise PreconditionError(f"not a cycle of the graph: {e.message}") from e
    return ChordedCycle(cycle=c, chords=tuple(chord_edges(g, c.vertices)))


def with_chords(g: Graph, vertices: Iterable[int]) -> ChordedCycle:
    return chords_of(g, Cycle(vertices=tuple(vertices)))


def reverify(g: Graph, claimed: ChordedCycle) -> ChordedCycle:
    """
    Recompute the chords of a claimed chorded cycle; the claim must be a subset.

    Raises:
        VerificationError: a claimed chord is not a real chord of the cycle in g
    """
    claimed.cycle.validate_in(g)
    actual = ChordedCycle(cycle=claimed.cycle, chords=tuple(chord_edges(g, claimed.cycle.vertices)))
    missing = {normalize_edge(*e) for e in claimed.chords} - set(actual.chords)
    if missing:
        raise VerificationError(f"claimed chords not present: {sorted(missing)}")
    return actual
