"""
Exhaustive maximum-chord cycle search
Every simple cycle is listed once: it starts at its smallest vertex and leaves toward the smaller of its two neighbours
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from app.apps.graph.models import Cycle, Graph
from app.apps.graph.utils.chords import chords_of
from app.apps.oracle.models import OracleResult, instance_hash
from app.common.errors import GraphTooLarge, verify
from app.config import ORACLE_LIMIT_N

logger = logging.getLogger(__name__)

Best = Optional[Tuple[int, Tuple[int, ...]]]  # (chords, vertices)
Partial = Tuple[Dict[int, int], Best, int]


def _better(candidate: Best, incumbent: Best) -> bool:
    if candidate is None:
        return False
    if incumbent is None:
        return True
    return (-candidate[0], candidate[1]) < (-incumbent[0], incumbent[1])


def _cycles_from(task: Tuple[Sequence[Sequence[int]], int]) -> Partial:
    """Per-length chord maxima over cycles whose smallest vertex is `start`."""
    adjacency, start = task
    masks = [sum(1 << w for w in row) for row in adjacency]
    table: Dict[int, int] = {}
    best: Best = None
    count = 0
    path: List[int] = [start]

    def extend(v: int, on_path: int, inner: int) -> None:
        nonlocal best, count
        for w in adjacency[v]:
            if w == start:
                if len(path) >= 3 and path[1] < path[-1]:
                    length = len(path)
                    chords = inner - length
                    count += 1
                    if chords > table.get(length, -1):
                        table[length] = chords
                    candidate = (chords, tuple(path))
                    if _better(candidate, best):
                        best = candidate
                continue
            if w < start or on_path >> w & 1:
                continue
            path.append(w)
            extend(w, on_path | (1 << w), inner + (masks[w] & on_path).bit_count())
            path.pop()

    extend(start, 1 << start, 0)
    return table, best, count


def _merge(parts: Sequence[Partial]) -> Partial:
    table: Dict[int, int] = {}
    best: Best = None
    count = 0
    for part_table, part_best, part_count in parts:
        for length, chords in part_table.items():
            table[length] = max(table.get(length, -1), chords)
        if _better(part_best, best):
            best = part_best
        count += part_count
    return table, best, count


def oracle_max_chorded_cycle(g: Graph, limit_n: int = ORACLE_LIMIT_N, workers: int = 1) -> OracleResult:
    """
    Most chords over all simple cycles, with the per-length table.

    Ties go to the lexicographically least canonical vertex sequence. With
    workers > 1 the start vertices fan out to a process pool.

    Raises:
        GraphTooLarge: more than limit_n vertices
    """
    if g.vertex_count > limit_n:
        raise GraphTooLarge(f"oracle enumeration needs n <= {limit_n}, got {g.vertex_count}")
    tasks = [(g.adjacency, s) for s in g.vertices()]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_cycles_from, tasks))
    else:
        parts = [_cycles_from(task) for task in tasks]
    table, best, count = _merge(parts)

    digest = instance_hash(g)
    if best is None:
        logger.debug(f"[ORACLE] {g} is acyclic")
        return OracleResult(instance_hash=digest)
    chorded = chords_of(g, Cycle(vertices=best[1]))
    verify(chorded.chord_count == best[0], "enumerated chord count disagrees with chords_of")
    logger.debug(f"[ORACLE] {g}: {count} cycles, max chords {best[0]} at length {len(best[1])}")
    return OracleResult(
        best_cycle=chorded,
        max_chords=best[0],
        per_length_table=dict(sorted(table.items())),
        instance_hash=digest,
        cycle_count=count,
    )
