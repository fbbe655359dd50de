"""
Expansion-preserving cleanup around a deleted vertex set
"""
import logging
from fractions import Fraction
from typing import Collection, FrozenSet, Set, Tuple

from app.apps.expander.models import CheckMode
from app.apps.expander.utils.verify import Rational, alpha_requirement, verify_alpha_expansion
from app.apps.expander.utils.violating import exact_scan, find_violating_set
from app.apps.graph.models import Graph
from app.common.errors import PreconditionError, verify
from app.config import EXACT_EXPANSION_LIMIT

logger = logging.getLogger(__name__)


def clean_for_expansion(
    g: Graph,
    u: Collection[int],
    alpha: Rational,
    override: bool = False,
    budget: int = 16,
    seed: int = 0,
) -> Tuple[FrozenSet[int], Graph]:
    """
    Grow B greedily so that G - (U + B) is an alpha/2-expander.

    Each round absorbs a set X of the current remainder with
    |N(X)| < alpha |X| / 2, which keeps |N_{G-U}(B)| < alpha |B| / 2.
    On graphs up to the exact-enumeration cap the sets are found by exhaustive
    scan and the remainder is re-verified exhaustively.

    Raises:
        PreconditionError: |U| > alpha^2 n / 100 and override is off
        VerificationError: |B| > 2|U|/alpha or |N_{G-U}(B)| > |B|
    """
    a = Fraction(alpha)
    if a <= 0:
        raise PreconditionError("alpha must be positive")
    removed = set(u)
    if any(not 0 <= v < g.vertex_count for v in removed):
        raise PreconditionError("u contains vertices outside the graph")
    if len(removed) * 100 > a * a * g.vertex_count:
        if not override:
            raise PreconditionError(
                f"|u|={len(removed)} exceeds alpha^2 n / 100 = {float(a * a * g.vertex_count / 100):.3f}"
            )
        logger.warning(f"[CLEAN] |u|={len(removed)} above alpha^2 n / 100; proceeding on override")

    half = alpha_requirement(a / 2)
    b: Set[int] = set()
    rounds = 0
    while True:
        keep = [v for v in g.vertices() if v not in removed and v not in b]
        h = g.induced_subgraph(keep)
        hi = h.vertex_count // 2
        if h.vertex_count <= EXACT_EXPANSION_LIMIT:
            witness, _ = exact_scan(h, 1, hi, lambda size, nb: nb < half(size))
        else:
            found = find_violating_set(h, half, 1, hi, budget=budget, seed=seed + rounds)
            witness = found.vertices if found is not None else None
        if witness is None:
            break
        b.update(keep[x] for x in witness)
        rounds += 1

    verify(len(b) * a <= 2 * len(removed), "cleanup absorbed more than 2|U|/alpha vertices", b=len(b), u=len(removed))
    outside = g.neighborhood(b) - removed
    verify(len(outside) <= len(b), "absorbed set has a neighbourhood larger than itself")

    g_prime = g.without(removed | b)
    if g_prime.vertex_count <= EXACT_EXPANSION_LIMIT:
        cert = verify_alpha_expansion(g_prime, a / 2, CheckMode.EXACT)
        verify(cert.passed, "cleaned graph is not an alpha/2-expander", witness=list(cert.witness or ()))
    logger.debug(f"[CLEAN] |U|={len(removed)} |B|={len(b)} after {rounds} rounds; remainder {g_prime}")
    return frozenset(b), g_prime
