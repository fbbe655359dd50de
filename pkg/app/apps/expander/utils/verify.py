"""
Executable expansion checks: alpha-expansion and (epsilon1, k) sublinear expansion
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, List, Optional, Tuple, Union

import numpy as np

from app.apps.expander.models import CheckMode, ExpansionCertificate, ExpansionProfile
from app.apps.expander.utils.violating import (
    Violation,
    bfs_ball_violations,
    exact_scan,
    random_connected_subset,
    sweep_prefixes,
)
from app.apps.graph.models import Graph
from app.common.errors import GraphTooLarge, PreconditionError, verify
from app.config import EXACT_EXPANSION_LIMIT

logger = logging.getLogger(__name__)

Rational = Union[int, float, Fraction, str]


def alpha_requirement(alpha: Rational) -> Callable[[int], int]:
    """required(|S|) = ceil(alpha * |S|), computed exactly."""
    a = Fraction(alpha)
    if a < 0:
        raise PreconditionError("alpha must be non-negative")
    return lambda size: math.ceil(a * size)


def _check_witness(g: Graph, witness: Tuple[int, ...], required: Callable[[int], float]) -> int:
    size = len(witness)
    nb = len(g.neighborhood(witness))
    verify(nb < required(size), "expansion witness does not violate", witness=list(witness))
    return nb


def _exact(g: Graph, lo: int, hi: int, required: Callable[[int], float]) -> ExpansionCertificate:
    if g.vertex_count > EXACT_EXPANSION_LIMIT:
        raise GraphTooLarge(
            f"exact expansion check needs n <= {EXACT_EXPANSION_LIMIT}, got {g.vertex_count}"
        )
    witness, checked = exact_scan(g, lo, hi, lambda size, nb: nb < required(size))
    if witness is None:
        return ExpansionCertificate(
            mode=CheckMode.EXACT, passed=True, checked_sizes=(lo, hi), sets_checked=checked
        )
    nb = _check_witness(g, witness, required)
    return ExpansionCertificate(
        mode=CheckMode.EXACT,
        passed=False,
        witness=witness,
        witness_neighborhood=nb,
        required=float(required(len(witness))),
        checked_sizes=(lo, hi),
        sets_checked=checked,
    )


def _sampled(
    g: Graph,
    lo: int,
    hi: int,
    required: Callable[[int], float],
    sample_budget: int,
    seed: int,
    workers: int,
) -> ExpansionCertificate:
    n = g.vertex_count

    def from_root(root: int) -> Tuple[Optional[Violation], int]:
        return bfs_ball_violations(g, root, lo, hi, required)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes: List[Tuple[Optional[Violation], int]] = list(pool.map(from_root, range(n)))
    else:
        outcomes = [from_root(root) for root in range(n)]

    rng = np.random.default_rng(seed)
    for _ in range(sample_budget if n else 0):
        subset = random_connected_subset(g, int(rng.integers(n)), int(rng.integers(lo, hi + 1)), rng)
        outcomes.append(sweep_prefixes(g, subset, lo, hi, required))

    checked = sum(count for _, count in outcomes)
    found = [v for v, _ in outcomes if v is not None]
    if not found:
        return ExpansionCertificate(
            mode=CheckMode.SAMPLED, passed=True, checked_sizes=(lo, hi), sets_checked=checked
        )
    witness = min(found, key=lambda v: v.vertices)
    nb = _check_witness(g, witness.vertices, required)
    return ExpansionCertificate(
        mode=CheckMode.SAMPLED,
        passed=False,
        witness=witness.vertices,
        witness_neighborhood=nb,
        required=float(required(len(witness.vertices))),
        checked_sizes=(lo, hi),
        sets_checked=checked,
    )


def check_expansion(
    g: Graph,
    required: Callable[[int], float],
    lo: int,
    hi: int,
    mode: CheckMode = CheckMode.EXACT,
    sample_budget: int = 64,
    seed: int = 0,
    workers: int = 1,
) -> ExpansionCertificate:
    """Certify |N(X)| >= required(|X|) over lo <= |X| <= hi."""
    mode = CheckMode(mode)
    lo = max(lo, 1)
    if hi < lo:
        return ExpansionCertificate(mode=mode, passed=True, checked_sizes=(lo, hi))
    if mode == CheckMode.EXACT:
        cert = _exact(g, lo, hi, required)
    else:
        cert = _sampled(g, lo, hi, required, sample_budget, seed, workers)
    logger.debug(f"[EXPANSION] {mode.value} check on {g}: {cert.verdict} ({cert.sets_checked} sets)")
    return cert


def verify_alpha_expansion(
    g: Graph,
    alpha: Rational,
    mode: CheckMode = CheckMode.EXACT,
    sample_budget: int = 64,
    seed: int = 0,
    workers: int = 1,
) -> ExpansionCertificate:
    """
    Check |N(S)| >= alpha |S| for 1 <= |S| <= n/2.

    Exact mode enumerates every such subset and returns the lexicographically
    least violating set; sampled mode checks all BFS balls plus
    `sample_budget` random connected subsets.

    Raises:
        GraphTooLarge: exact mode with n above the enumeration cap
    """
    return check_expansion(
        g, alpha_requirement(alpha), 1, g.vertex_count // 2, mode, sample_budget, seed, workers
    )


def verify_sublinear_expansion(
    g: Graph,
    profile: ExpansionProfile,
    mode: CheckMode = CheckMode.EXACT,
    sample_budget: int = 64,
    seed: int = 0,
    workers: int = 1,
) -> ExpansionCertificate:
    """Check |N(X)| >= epsilon(|X|) |X| for k/2 <= |X| <= n/2."""
    lo, hi = profile.size_range(g.vertex_count)
    return check_expansion(g, profile.required, lo, hi, mode, sample_budget, seed, workers)
