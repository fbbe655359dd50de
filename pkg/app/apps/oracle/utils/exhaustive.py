"""
Brute-force references for the rotation closure and expansion checks
"""
from collections import deque
from itertools import combinations
from typing import Callable, FrozenSet, List, Optional, Set, Tuple

from app.apps.expander.models import CheckMode, ExpansionCertificate, ExpansionProfile
from app.apps.expander.utils.verify import Rational, alpha_requirement
from app.apps.graph.models import Graph, Path
from app.common.errors import GraphTooLarge, PreconditionError, VerificationError
from app.config import EXACT_EXPANSION_LIMIT, ORACLE_LIMIT_N


def oracle_rotation_closure(g: Graph, p: Path, fixed: int, limit_n: int = ORACLE_LIMIT_N) -> FrozenSet[int]:
    """Every free endpoint reachable by rotations, searching whole paths rather than endpoints."""
    if g.vertex_count > limit_n:
        raise GraphTooLarge(f"rotation oracle needs n <= {limit_n}, got {g.vertex_count}")
    try:
        p.validate_in(g)
    except VerificationError as e:
        raise PreconditionError(f"not a path of the graph: {e.message}") from e
    if fixed not in (p.first, p.last):
        raise PreconditionError(f"{fixed} is not an endpoint of the path")

    start = p.vertices if p.first == fixed else tuple(reversed(p.vertices))
    seen: Set[Tuple[int, ...]] = {start}
    queue = deque([start])
    while queue:
        vertices = queue.popleft()
        end = vertices[-1]
        for i, v in enumerate(vertices[:-2]):
            if not g.has_edge(v, end):
                continue
            rotated = vertices[: i + 1] + vertices[:i:-1]
            if rotated not in seen:
                seen.add(rotated)
                queue.append(rotated)
    return frozenset(state[-1] for state in seen)


def oracle_expansion(
    g: Graph,
    alpha: Optional[Rational] = None,
    profile: Optional[ExpansionProfile] = None,
    limit_n: int = EXACT_EXPANSION_LIMIT,
) -> ExpansionCertificate:
    """
    Expansion by listing every subset in the checked size range.

    With `alpha`, sizes 1..n/2 need |N(S)| >= alpha |S|; with `profile`, its
    size range needs |N(S)| >= eps(|S|) |S|. A failure reports the
    lexicographically least violating set.
    """
    if (alpha is None) == (profile is None):
        raise PreconditionError("give exactly one of alpha or profile")
    n = g.vertex_count
    if n > limit_n:
        raise GraphTooLarge(f"expansion oracle needs n <= {limit_n}, got {n}")
    if profile is not None:
        lo, hi = profile.size_range(n)
        required: Callable[[int], float] = profile.required
    else:
        lo, hi = 1, n // 2
        required = alpha_requirement(alpha)

    witnesses: List[Tuple[int, ...]] = []
    checked = 0
    for size in range(max(lo, 1), hi + 1):
        for subset in combinations(range(n), size):
            checked += 1
            if len(g.neighborhood(subset)) < required(size):
                witnesses.append(subset)
                break
    if not witnesses:
        return ExpansionCertificate(mode=CheckMode.EXACT, passed=True, checked_sizes=(lo, hi), sets_checked=checked)
    witness = min(witnesses)
    return ExpansionCertificate(
        mode=CheckMode.EXACT,
        passed=False,
        witness=witness,
        witness_neighborhood=len(g.neighborhood(witness)),
        required=float(required(len(witness))),
        checked_sizes=(lo, hi),
        sets_checked=checked,
    )
