"""
Cycles with two interlacing chords
Follows the rotation argument: long path, endpoint closure, back-edge cycle, crossing-chord scan
"""
import logging
from typing import Iterator, List, Optional, Sequence, Tuple

from app.apps.cycles.models import InterlacedCycle
from app.apps.cycles.utils.rotation import longest_path_heuristic, posa_closure
from app.apps.graph.models import ChordedCycle, Cycle, Edge, Graph, Path
from app.apps.graph.utils.chords import chord_edges, reverify
from app.common.errors import SearchFailure

logger = logging.getLogger(__name__)


def find_interlacing_pair(cycle: Cycle, chords: Sequence[Edge]) -> Optional[Tuple[Edge, Edge]]:
    """
    A pair of crossing chords oriented as ((a, b), (c, d)) with cyclic order
    a, c, b, d; lowest positions first. None when no two chords cross.
    """
    pos = cycle.positions()
    spans = sorted(
        (min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in chords
    )
    vs = cycle.vertices
    for i, (p, q) in enumerate(spans):
        for r, s in spans[i + 1:]:
            if r >= q:
                break
            if p < r < q < s:
                return (vs[p], vs[q]), (vs[r], vs[s])
    return None


def back_edge_cycle(g: Graph, vertices: Sequence[int]) -> Optional[List[int]]:
    """Cycle closed by the free end's neighbour furthest back along the path."""
    end = vertices[-1]
    pos = {v: i for i, v in enumerate(vertices)}
    back = [pos[w] for w in g.adjacency[end] if w in pos and pos[w] < len(vertices) - 2]
    if not back:
        return None
    return list(vertices[min(back):])


def _candidate_cycles(g: Graph, p: Path, max_candidates: int) -> Iterator[List[int]]:
    """Back-edge cycles at rotation endpoints, base-path order nearest the free end first."""
    for fixed in (p.first, p.last):
        closure = posa_closure(g, p, fixed, max_endpoints=max_candidates)
        order = {v: i for i, v in enumerate(closure.oriented_base())}
        endpoints = sorted(closure.endpoint_set, key=lambda w: -order[w])
        for w in endpoints[:max_candidates]:
            cycle = back_edge_cycle(g, closure.replay(w).vertices)
            if cycle is not None and len(cycle) >= 4:
                yield cycle


def find_interlaced_cycle(
    g: Graph,
    budget: int = 4,
    seed: int = 0,
    max_candidates: int = 64,
) -> InterlacedCycle:
    """
    Cycle with two interlacing chords.

    A long path is grown with rotations; from each end, the rotation closure
    gives endpoints w whose furthest back-edge closes a cycle carrying all of
    w's other path neighbours as chords. The first such cycle with a crossing
    chord pair is returned.

    Raises:
        SearchFailure: no candidate cycle has crossing chords
    """
    if g.edge_count == 0:
        raise SearchFailure("no interlacing chords in an edgeless graph")
    scanned = 0
    for attempt in range(max(1, budget)):
        path = longest_path_heuristic(g, budget=max(1, budget), seed=seed + attempt)
        for vertices in _candidate_cycles(g, path, max_candidates):
            scanned += 1
            cycle = Cycle(vertices=tuple(vertices))
            chords = chord_edges(g, vertices)
            pair = find_interlacing_pair(cycle, chords)
            if pair is None:
                continue
            result = InterlacedCycle(
                chorded=ChordedCycle(cycle=cycle, chords=tuple(chords)),
                pair=pair,
            )
            reverify(g, result.chorded)
            logger.debug(
                f"[INTERLACE] cycle of length {cycle.length} with {len(chords)} chords "
                f"after {scanned} candidates"
            )
            return result
    raise SearchFailure(f"no interlacing chord pair among {scanned} candidate cycles")


def compact_interlaced_cycle(g: Graph, ic: InterlacedCycle, target: int = 4) -> InterlacedCycle:
    """
    Shrink an interlaced cycle along its chords.

    Each pass splits the cycle at every chord and keeps the shortest part that
    still carries a crossing chord pair; stops at `target` or when no split
    keeps one.
    """
    current = ic
    while current.cycle.length > target:
        cycle = list(current.cycle.vertices)
        pos = {v: i for i, v in enumerate(cycle)}
        best: Optional[InterlacedCycle] = None
        for u, v in current.chorded.chords:
            i, j = sorted((pos[u], pos[v]))
            for part in (cycle[i:j + 1], cycle[j:] + cycle[:i + 1]):
                if len(part) < 4 or (best is not None and len(part) >= best.cycle.length):
                    continue
                candidate = Cycle(vertices=tuple(part))
                chords = chord_edges(g, part)
                pair = find_interlacing_pair(candidate, chords)
                if pair is not None:
                    best = InterlacedCycle(
                        chorded=ChordedCycle(cycle=candidate, chords=tuple(chords)),
                        pair=pair,
                    )
        if best is None:
            break
        current = best
    reverify(g, current.chorded)
    if current.cycle.length < ic.cycle.length:
        logger.debug(f"[INTERLACE] compacted {ic.cycle.length} -> {current.cycle.length}")
    return current
