"""
Expander subgraph extraction
Repeatedly passes to the denser side of a sparse cut, then peels low-degree vertices
"""
import logging

from app.apps.expander.models import ExpanderResult, ExpansionProfile
from app.apps.expander.utils.violating import find_violating_set
from app.apps.graph.models import Graph
from app.common.errors import PreconditionError, verify

logger = logging.getLogger(__name__)


def _at_least_half_density(h: Graph, g: Graph) -> bool:
    # d(H) >= d(G)/2  <=>  2 m_H n_G >= m_G n_H
    return 2 * h.edge_count * g.vertex_count >= g.edge_count * h.vertex_count


def _denser(a: Graph, b: Graph) -> Graph:
    # compare 2m/n without division; larger side wins ties
    left = a.edge_count * b.vertex_count
    right = b.edge_count * a.vertex_count
    if left != right:
        return a if left > right else b
    return a if a.vertex_count >= b.vertex_count else b


def peel_to_half_average(h: Graph) -> Graph:
    """
    Remove every vertex with degree < d(H)/2 until none is left.

    Each batch removal can only raise the average degree, so the process
    never empties a graph that has an edge.
    """
    while h.vertex_count:
        n, m = h.vertex_count, h.edge_count
        low = [v for v in h.vertices() if h.degree(v) * n < m]
        if not low:
            break
        h = h.without(low)
    return h


def extract_expander_subgraph(
    g: Graph,
    profile: ExpansionProfile,
    budget: int = 8,
    seed: int = 0,
    max_rounds: int = 64,
) -> ExpanderResult:
    """
    Fixed point of the sparse-cut process: while a set violating the
    (epsilon1, k) expansion is found, keep the denser side; finally peel to
    minimum degree >= d(H)/2.

    The violating-set search is heuristic. The degree postconditions
    d(H) >= d(G)/2 and delta(H) >= d(H)/2 are checked exactly.
    """
    if g.vertex_count == 0:
        raise PreconditionError("expander extraction needs a non-empty graph")

    h = g
    rounds = 0
    while rounds < max_rounds:
        lo, hi = profile.size_range(h.vertex_count)
        found = find_violating_set(h, profile.required, lo, hi, budget=budget, seed=seed + rounds)
        if found is None:
            break
        side = _denser(h.induced_subgraph(found.vertices), h.without(found.vertices))
        if not _at_least_half_density(side, g):
            logger.debug(f"[EXPANDER] split of {h} would drop below half the source density, stopping")
            break
        h = side
        rounds += 1

    h = peel_to_half_average(h)

    verify(_at_least_half_density(h, g), "extracted subgraph lost more than half the average degree")
    verify(
        h.vertex_count == 0 or h.min_degree() * h.vertex_count >= h.edge_count,
        "extracted subgraph has minimum degree below half its average degree",
    )
    flagged = h.vertex_count < profile.k or h.edge_count == 0
    if flagged:
        logger.info(f"[EXPANDER] degenerate extraction from {g}: {h}")
    logger.debug(f"[EXPANDER] {g} -> {h} after {rounds} rounds")
    return ExpanderResult(
        graph=h,
        rounds=rounds,
        source_average_degree=g.average_degree(),
        average_degree=h.average_degree(),
        min_degree=h.min_degree(),
        flagged_small=flagged,
    )
