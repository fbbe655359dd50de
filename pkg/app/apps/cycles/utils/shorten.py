"""
Chorded-cycle shortening
Chord splits first, then far-pair shortcuts routed off the cycle around a protected chord
"""
import logging
from collections import deque
from typing import Dict, List, Optional, Set, Tuple

from app.apps.cycles.models import ShortenResult
from app.apps.graph.models import ChordedCycle, Cycle, Edge, Graph
from app.apps.graph.utils.chords import chord_edges, chords_of, reverify
from app.common.errors import PreconditionError, verify

logger = logging.getLogger(__name__)


def _rank(length: int, lo: int, hi: int) -> Tuple[int, int]:
    # in range: longest first; above range: shortest first
    return (0, -length) if lo <= length <= hi else (1, length)


def _chord_split(
    g: Graph, cycle: List[int], chords: List[Edge], lo: int, hi: int, budget: int
) -> Optional[List[int]]:
    """Shorter sub-cycle cut off by one chord that still carries a chord of its own."""
    pos = {v: i for i, v in enumerate(cycle)}
    size = len(cycle)
    options: List[Tuple[Tuple[int, int], List[int]]] = []
    for u, v in chords:
        i, j = sorted((pos[u], pos[v]))
        for part in (cycle[i:j + 1], cycle[j:] + cycle[:i + 1]):
            if lo <= len(part) < size:
                options.append((_rank(len(part), lo, hi), part))
    options.sort(key=lambda item: (item[0], item[1]))
    for _, part in options[:budget]:
        if chord_edges(g, part):
            return part
    return None


def _ball(g: Graph, sources: List[int], radius: int, inside: Set[int]) -> Set[int]:
    """Off-cycle vertices within graph distance `radius` of the sources."""
    dist: Dict[int, int] = {s: 0 for s in sources}
    queue = deque(sources)
    while queue:
        u = queue.popleft()
        if dist[u] >= radius:
            continue
        for w in g.adjacency[u]:
            if w not in dist and w not in inside:
                dist[w] = dist[u] + 1
                queue.append(w)
    return {v for v in dist if v not in inside}


def _far_pair_shortcut(
    g: Graph,
    cycle: List[int],
    chord: Edge,
    lo: int,
    hi: int,
    r1: int,
    r2: int,
    budget: int,
) -> Optional[List[int]]:
    """
    Keep the arc that holds the chord and replace a far stretch of the other
    side by an off-cycle shortcut. Shortcut ends sit at cycle distance >= r1
    from each other and > r2 from the chord ends; shortcut interiors avoid the
    radius-r2 ball around the chord.
    """
    size = len(cycle)
    a, b = chord
    pos = {v: i for i, v in enumerate(cycle)}
    # rotate so that a sits at 0 and b at j <= size / 2
    start = pos[a]
    order = cycle[start:] + cycle[:start]
    j = order.index(b)
    if j > size // 2:
        order = [order[0]] + order[:0:-1]
        j = order.index(b)
    index = {v: i for i, v in enumerate(order)}
    on = set(order)
    protected = _ball(g, [a, b], r2, on) if r2 > 0 else set()

    def cyclic_gap(i: int) -> int:
        return min(i, size - i, abs(i - j), size - abs(i - j))

    candidates = [i for i in range(j, size) if r2 == 0 or cyclic_gap(i) > r2]
    if len(candidates) > budget:
        stride = len(candidates) / budget
        candidates = [candidates[int(k * stride)] for k in range(budget)]

    best: Optional[Tuple[Tuple[int, int], List[int]]] = None
    for ix in candidates:
        x = order[ix]
        # BFS from x through off-cycle, unprotected vertices
        parent: Dict[int, Optional[int]] = {x: None}
        depth = {x: 0}
        queue = deque([x])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w in on:
                    iy = index[w] if index[w] != 0 else size
                    dropped = iy - ix
                    if w == x or iy <= ix + 1 or dropped < r1:
                        continue
                    if r2 and cyclic_gap(iy % size) <= r2:
                        continue
                    s_len = depth[u] + 1
                    if (ix, iy) == (j, size) and s_len == 1:
                        continue  # the protected chord itself
                    if s_len >= dropped:
                        continue
                    new_len = size - dropped + s_len
                    if new_len < lo:
                        continue
                    chain = [u]
                    while parent[chain[-1]] is not None:
                        chain.append(parent[chain[-1]])
                    shortcut = list(reversed(chain))[1:]  # interior, x excluded
                    # y .. a .. b .. x, then the shortcut back to y
                    kept = order[iy:] + order[: ix + 1] if iy < size else order[: ix + 1]
                    new_cycle = kept + shortcut
                    rank = _rank(new_len, lo, hi)
                    if best is None or rank < best[0]:
                        best = (rank, new_cycle)
                elif w not in depth and w not in protected and depth[u] + 1 < hi:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    queue.append(w)
    return best[1] if best is not None else None


def _designated_chord(cycle: List[int], chords: List[Edge]) -> Edge:
    # chord whose shorter side is shortest leaves the most room for shortcuts
    pos = {v: i for i, v in enumerate(cycle)}
    size = len(cycle)

    def span(e: Edge) -> Tuple[int, Edge]:
        gap = abs(pos[e[0]] - pos[e[1]])
        return (min(gap, size - gap), e)

    return min(chords, key=span)


def shorten_chorded_cycle(
    g: Graph,
    cc: ChordedCycle,
    lo: int,
    hi: int,
    r1: Optional[int] = None,
    r2: Optional[int] = None,
    budget: int = 32,
    max_iterations: int = 256,
) -> ShortenResult:
    """
    Shorten a chorded cycle into [lo, hi] keeping at least one chord.

    Each iteration either splits the cycle along a chord (keeping a part that
    still has a chord) or replaces a far stretch by an off-cycle shortcut
    around a designated chord; either way the length strictly drops. When
    neither applies above hi, the best cycle so far is returned flagged.
    Protective radii default to r1 = hi/4 and r2 = hi/8.

    Raises:
        PreconditionError: no chord, lo >= hi, or input shorter than lo
    """
    if lo >= hi:
        raise PreconditionError(f"need lo < hi, got [{lo}, {hi}]")
    current = reverify(g, cc)
    if current.chord_count < 1:
        raise PreconditionError("shortening needs a cycle with a chord")
    if current.length < lo:
        raise PreconditionError(f"cycle of length {current.length} is shorter than lo={lo}")
    r1 = max(2, hi // 4) if r1 is None else r1
    r2 = max(0, hi // 8) if r2 is None else r2

    iterations = 0
    cycle = list(current.cycle.vertices)
    chords = list(current.chords)
    while len(cycle) > hi and iterations < max_iterations:
        nxt = _chord_split(g, cycle, chords, lo, hi, budget)
        if nxt is None:
            chord = _designated_chord(cycle, chords)
            nxt = _far_pair_shortcut(g, cycle, chord, lo, hi, r1, r2, budget)
            if nxt is None and (r1 > 2 or r2 > 0):
                nxt = _far_pair_shortcut(g, cycle, chord, lo, hi, 2, 0, budget)
        if nxt is None:
            break
        verify(len(nxt) < len(cycle), "shortening step did not reduce the length")
        cycle = nxt
        chords = chord_edges(g, cycle)
        verify(len(chords) >= 1, "shortening step lost every chord")
        iterations += 1

    result = chords_of(g, Cycle(vertices=tuple(cycle)))
    flagged = result.length > hi
    if flagged:
        logger.info(f"[SHORTEN] best effort: length {result.length} still above {hi}")
    return ShortenResult(chorded=result, flagged=flagged, iterations=iterations)
