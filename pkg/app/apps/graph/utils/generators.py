"""
Seeded graph generators for the test corpus
Random regular graphs use repeated stub pairing with rejection of loops and
multi-edges; all randomness goes through numpy's Generator
"""
import logging
from collections import defaultdict
from enum import Enum
from typing import Dict, Optional, Set, Tuple

import numpy as np
from pydantic import BaseModel

from app.apps.graph.models import Graph
from app.apps.graph.utils.structure import girth
from app.common.errors import GraphInputError

logger = logging.getLogger(__name__)

MAX_PAIRING_ATTEMPTS = 200
MAX_GIRTH_ATTEMPTS = 500


class GeneratorKind(str, Enum):
    RANDOM_REGULAR = "random-regular"
    GNP_MIN_DEGREE = "gnp-min-degree"
    HIGH_GIRTH_REGULAR = "high-girth-regular"
    COMPLETE = "complete"
    CYCLE = "cycle"
    PETERSEN = "petersen"


class GeneratorParams(BaseModel):
    """Parameters for `generate`; unused ones are ignored per kind."""
    n: Optional[int] = None
    d: Optional[int] = None
    p: Optional[float] = None
    girth: Optional[int] = None


def _require(value, name: str, kind: GeneratorKind):
    if value is None:
        raise GraphInputError(f"generator '{kind.value}' needs parameter '{name}'")
    return value


def _try_pairing(n: int, d: int, rng: np.random.Generator) -> Optional[Set[Tuple[int, int]]]:
    """One pairing round: keep valid pairs, re-pair the rejected stubs, give up when stuck."""
    edges: Set[Tuple[int, int]] = set()
    stubs = np.repeat(np.arange(n), d)

    while stubs.size:
        potential: Dict[int, int] = defaultdict(int)
        shuffled = rng.permutation(stubs)
        for s1, s2 in zip(shuffled[0::2].tolist(), shuffled[1::2].tolist()):
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                potential[s1] += 1
                potential[s2] += 1

        if not _suitable(edges, potential):
            return None
        stubs = np.array([v for v, count in sorted(potential.items()) for _ in range(count)], dtype=np.int64)
    return edges


def _suitable(edges: Set[Tuple[int, int]], potential: Dict[int, int]) -> bool:
    # a rejected stub can still be paired iff some two distinct pending vertices are non-adjacent
    if not potential:
        return True
    pending = sorted(potential)
    for i, s1 in enumerate(pending):
        for s2 in pending[:i]:
            if (s2, s1) not in edges:
                return True
    return False


def random_regular(n: int, d: int, rng: np.random.Generator) -> Graph:
    if (n * d) % 2 != 0:
        raise GraphInputError("n * d must be even for a regular graph")
    if not 0 <= d < n:
        raise GraphInputError("random-regular needs 0 <= d < n")
    for attempt in range(MAX_PAIRING_ATTEMPTS):
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            logger.debug(f"random-regular n={n} d={d} paired after {attempt + 1} attempts")
            return Graph.from_edges(n, edges)
    raise GraphInputError(f"could not pair a {d}-regular graph on {n} vertices")


def high_girth_regular(n: int, d: int, min_girth: int, rng: np.random.Generator) -> Graph:
    for attempt in range(MAX_GIRTH_ATTEMPTS):
        g = random_regular(n, d, rng)
        g_girth = girth(g)
        if g_girth is None or g_girth >= min_girth:
            logger.debug(f"high-girth-regular accepted attempt {attempt + 1} with girth {g_girth}")
            return g
    raise GraphInputError(f"no {d}-regular graph on {n} vertices with girth >= {min_girth} found")


def gnp_min_degree(n: int, p: float, d: int, rng: np.random.Generator) -> Graph:
    """G(n, p) sample, then every vertex below degree d is topped up with random edges."""
    if not 0.0 <= p <= 1.0:
        raise GraphInputError("p must lie in [0, 1]")
    if not 0 <= d < n:
        raise GraphInputError("gnp-min-degree needs 0 <= d < n")
    rows = [set() for _ in range(n)]
    for u in range(n - 1):
        hits = np.flatnonzero(rng.random(n - u - 1) < p) + u + 1
        for v in hits.tolist():
            rows[u].add(v)
            rows[v].add(u)
    for v in range(n):
        need = d - len(rows[v])
        if need <= 0:
            continue
        candidates = np.array([w for w in range(n) if w != v and w not in rows[v]], dtype=np.int64)
        for w in rng.choice(candidates, size=need, replace=False).tolist():
            rows[v].add(w)
            rows[w].add(v)
    return Graph(n, rows)


def complete(n: int) -> Graph:
    return Graph(n, [[w for w in range(n) if w != v] for v in range(n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphInputError("a cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def generate(kind, params: Optional[GeneratorParams] = None, seed: int = 0) -> Graph:
    """
    Build a corpus graph; deterministic for a fixed seed.

    Raises:
        GraphInputError: infeasible parameters
    """
    kind = GeneratorKind(kind)
    params = params or GeneratorParams()
    rng = np.random.default_rng(seed)

    if kind == GeneratorKind.RANDOM_REGULAR:
        return random_regular(_require(params.n, "n", kind), _require(params.d, "d", kind), rng)
    if kind == GeneratorKind.HIGH_GIRTH_REGULAR:
        return high_girth_regular(
            _require(params.n, "n", kind),
            _require(params.d, "d", kind),
            params.girth or 5,
            rng,
        )
    if kind == GeneratorKind.GNP_MIN_DEGREE:
        n = _require(params.n, "n", kind)
        d = _require(params.d, "d", kind)
        p = params.p if params.p is not None else min(1.0, d / max(1, n - 1))
        return gnp_min_degree(n, p, d, rng)
    if kind == GeneratorKind.COMPLETE:
        return complete(_require(params.n, "n", kind))
    if kind == GeneratorKind.CYCLE:
        return cycle(_require(params.n, "n", kind))
    return petersen()
