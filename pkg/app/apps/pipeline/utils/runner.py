"""
End-to-end chorded-cycle pipeline
C4-free reduction, expander extraction, degree classes, gadget search, chaining, fallback
"""
import logging
import math
import time
from typing import Any, Callable, Dict, List, Optional, Set, Tuple, TypeVar

from app.apps.cycles.utils.long_cycle import find_long_cycle
from app.apps.expander.models import CheckMode, ExpansionProfile
from app.apps.expander.utils.extract import extract_expander_subgraph
from app.apps.expander.utils.verify import verify_sublinear_expansion
from app.apps.gadgets.models import ChainResult, CycleExtender, GadgetSizeParams, NiceSpider
from app.apps.gadgets.utils.chain import chain_gadgets
from app.apps.gadgets.utils.extender import build_cycle_extender, lift_extender
from app.apps.gadgets.utils.spiders import classify_degrees, degree_diagnostics, find_nice_spiders, lift_spider
from app.apps.graph.models import ChordedCycle, Cycle, Graph
from app.apps.graph.utils.c4 import extract_c4_free_subgraph
from app.apps.graph.utils.chords import chords_of, reverify
from app.apps.graph.utils.structure import block_cut_tree, graph_summary
from app.apps.graph.utils.traversal import connected_components
from app.apps.oracle.models import OracleResult
from app.apps.oracle.utils.enumeration import oracle_max_chorded_cycle
from app.apps.pipeline.schemas import (
    GadgetInventory,
    InputBlock,
    OracleBlock,
    PipelineConfig,
    PipelineDiagnostics,
    PipelineMode,
    Report,
    ResultBlock,
    StageRecord,
    StageStatus,
)
from app.common.errors import ChordError, SearchFailure, StageFailure, verify
from app.config import EXACT_EXPANSION_LIMIT

logger = logging.getLogger(__name__)

T = TypeVar("T")

MAX_EXTENDER_FAILURES = 2


class StageLog:
    """Runs stages, timing each and recording failures instead of raising them."""

    def __init__(self):
        self.records: List[StageRecord] = []
        self.timings: Dict[str, float] = {}
        self.last_error: Optional[ChordError] = None

    def run(
        self,
        name: str,
        fn: Callable[[], T],
        sizes: Optional[Callable[[T], Dict[str, Any]]] = None,
    ) -> Optional[T]:
        start = time.perf_counter()
        self.last_error = None
        try:
            value = fn()
        except ChordError as e:
            self.last_error = e
            elapsed = time.perf_counter() - start
            logger.info(f"[PIPELINE] stage {name} failed: {e.message}")
            self._add(StageRecord(name=name, status=StageStatus.FAILED, elapsed=elapsed, message=e.message))
            return None
        elapsed = time.perf_counter() - start
        record = StageRecord(name=name, status=StageStatus.OK, elapsed=elapsed)
        if sizes is not None:
            record.sizes = sizes(value)
        self._add(record)
        logger.debug(f"[PIPELINE] stage {name} ok in {elapsed:.3f}s")
        return value

    def skip(self, name: str, message: str) -> None:
        self._add(StageRecord(name=name, status=StageStatus.SKIPPED, message=message))

    def _add(self, record: StageRecord) -> None:
        self.records.append(record)
        self.timings[record.name] = self.timings.get(record.name, 0.0) + record.elapsed


def gadget_params(cfg: PipelineConfig, attempt: int = 0) -> GadgetSizeParams:
    shorten_lo = 4
    return GadgetSizeParams(
        anchor_size=cfg.anchor_size,
        max_cycle_len=max(cfg.max_cycle_len, shorten_lo + 1),
        max_path_len=cfg.max_path_len,
        shorten_lo=shorten_lo,
        search_budget=cfg.search_budget,
        seed=cfg.seed + attempt,
    )


def _spider_record(s: NiceSpider) -> Dict[str, Any]:
    return {"center": s.center, "leaves": list(s.leaves), "legs": [list(leg.vertices) for leg in s.legs]}


def _extender_record(e: CycleExtender) -> Dict[str, Any]:
    return {
        "cycle": list(e.cycle.vertices),
        "p1": list(e.p1.vertices),
        "p2": list(e.p2.vertices),
        "a1": list(e.a1),
        "a2": list(e.a2),
    }


def _collect_extenders(
    host: Graph,
    forbidden: Set[int],
    budget: int,
    cfg: PipelineConfig,
    log: StageLog,
) -> Tuple[List[CycleExtender], int, List[Tuple[str, Cycle]]]:
    """
    Extenders built one after another in what the earlier gadgets leave free.

    Also returns, per failed attempt, the most-chorded cycle it built before
    failing (in host ids), named after the attempt and its failed stage.
    """
    found: List[CycleExtender] = []
    partials: List[Tuple[str, Cycle]] = []
    attempts = 0
    failures = 0
    blocked = set(forbidden)
    while len(found) < budget and failures < MAX_EXTENDER_FAILURES:
        residual = host.without(blocked)
        if residual.vertex_count == 0:
            break
        piece = residual.induced_subgraph(max(connected_components(residual), key=len))
        params = gadget_params(cfg, attempts)
        attempts += 1
        ext = log.run(
            f"extender-{attempts}",
            lambda: lift_extender(host, piece, build_cycle_extender(piece, (), params)),
            lambda e: {"cycle": e.cycle.length, "p1": e.p1.length, "p2": e.p2.length},
        )
        if ext is None:
            failures += 1
            error = log.last_error
            if isinstance(error, StageFailure) and error.partial is not None:
                vertices = host.embed(piece, error.partial.cycle.vertices)
                partials.append((f"extender-{attempts}:{error.stage}", Cycle(vertices=tuple(vertices))))
            continue
        failures = 0
        found.append(ext)
        blocked |= ext.vertices()
    return found, attempts, partials


def _chain_prefix(
    host: Graph,
    spiders: List[NiceSpider],
    extenders: List[CycleExtender],
    cfg: PipelineConfig,
) -> ChainResult:
    """Longest chainable prefix of the gadget list, found by binary search on its length."""
    gadgets = spiders + extenders
    lo, hi = 0, len(gadgets) - 1
    best: Optional[ChainResult] = None
    while lo < hi:
        mid = (lo + hi + 1) // 2
        prefix = gadgets[:mid]
        try:
            best = chain_gadgets(
                host,
                [x for x in prefix if isinstance(x, NiceSpider)],
                [x for x in prefix if isinstance(x, CycleExtender)],
                cfg.max_link_len,
                retry_budget=0,
            )
            lo = mid
        except SearchFailure:
            hi = mid - 1
    if best is None or best.spiders_used + best.extenders_used != lo:
        raise SearchFailure("no prefix of the gadget list chains")
    return best


def _block_cycles(g: Graph, cfg: PipelineConfig) -> List[Tuple[str, ChordedCycle]]:
    """A long cycle in every block with a cycle; every cycle of g lies in one block."""
    found: List[Tuple[str, ChordedCycle]] = []
    for block in block_cut_tree(g).blocks:
        if len(block) < 3:
            continue
        piece = g.induced_subgraph(block)
        try:
            cycle = find_long_cycle(piece, budget=cfg.search_budget, seed=cfg.seed).cycle
        except ChordError as e:
            logger.debug(f"[PIPELINE] no long cycle in block of {len(block)}: {e.message}")
            continue
        found.append(("long-cycle", chords_of(g, Cycle(vertices=tuple(g.embed(piece, cycle.vertices))))))
    return found


def _fallback_cycle(
    g: Graph,
    cfg: PipelineConfig,
    partials: List[Tuple[str, ChordedCycle]],
) -> Tuple[str, ChordedCycle]:
    """Most-chorded cycle among the stage partials and the per-block long cycles; longer wins ties."""
    candidates = partials + _block_cycles(g, cfg)
    if not candidates:
        raise SearchFailure("graph is acyclic")
    return max(candidates, key=lambda c: (c[1].chord_count, c[1].length))


def _result_block(final: ChordedCycle, source: str) -> ResultBlock:
    length = final.length
    chords = final.chord_count
    return ResultBlock(
        length=length,
        chords=chords,
        chord_list=sorted(final.chords),
        cycle=list(final.cycle.vertices),
        chords_per_length=chords / length,
        normalized=chords * math.log2(length) ** 2 / length,
        source=source,
    )


def run_pipeline(
    g: Graph,
    cfg: Optional[PipelineConfig] = None,
    name: Optional[str] = None,
    with_oracle: bool = True,
    oracle: Optional[Callable[[Graph, int], OracleResult]] = None,
) -> Report:
    """
    Run every stage on g and report the best chorded cycle found.

    Stages record failures rather than raising; a report is always returned.
    The final chords are recomputed on g before the report is built, and a
    claimed chord missing from g aborts with VerificationError. Graphs with at
    most `oracle_limit` vertices are compared against the exhaustive oracle.
    """
    started = time.perf_counter()
    cfg = (cfg or PipelineConfig()).resolve(g.vertex_count)
    log = StageLog()
    diagnostics = PipelineDiagnostics()
    inventory = GadgetInventory()
    summary = graph_summary(g)
    logger.info(f"[PIPELINE] {name or 'graph'}: n={summary.n} m={summary.m} delta={summary.min_degree}")

    work = g
    c4 = log.run(
        "c4-free",
        lambda: extract_c4_free_subgraph(g, cfg.min_degree_c / 2),
        lambda r: {"edges": r.graph.edge_count, "average_degree": round(r.average_degree, 6)},
    )
    if c4 is not None:
        diagnostics.c4_shortfall = c4.shortfall
        diagnostics.c4_average_degree = round(c4.average_degree, 6)
        if not c4.shortfall:
            work = c4.graph

    host = work
    profile = ExpansionProfile(epsilon1=cfg.epsilon1, k=cfg.k)
    if work.edge_count == 0:
        log.skip("expander", "no edges")
    else:
        expander = log.run(
            "expander",
            lambda: extract_expander_subgraph(work, profile, budget=cfg.search_budget, seed=cfg.seed),
            lambda r: {"n": r.graph.vertex_count, "m": r.graph.edge_count, "rounds": r.rounds},
        )
        if expander is not None:
            diagnostics.expander_flagged = expander.flagged_small
            diagnostics.expander_rounds = expander.rounds
            if not expander.flagged_small:
                host = expander.graph
                check_mode = CheckMode.EXACT
                if cfg.mode != PipelineMode.EXACT or host.vertex_count > EXACT_EXPANSION_LIMIT:
                    check_mode = CheckMode.SAMPLED
                cert = log.run(
                    "expansion-check",
                    lambda: verify_sublinear_expansion(host, profile, check_mode, seed=cfg.seed),
                    lambda c: {"mode": c.mode.value, "verdict": c.verdict, "sets": c.sets_checked},
                )
                if cert is not None:
                    diagnostics.expansion_check = f"{cert.mode.value}:{cert.verdict}"

    classes = log.run(
        "classify",
        lambda: classify_degrees(host, cfg.degree_threshold_m),
        lambda lr: {"L": len(lr[0]), "R": len(lr[1])},
    )
    if host.vertex_count:
        diagnostics.degrees = degree_diagnostics(host, cfg.degree_threshold_m)

    spiders: List[NiceSpider] = []
    if classes is not None and classes[0]:
        spiders = log.run(
            "spiders",
            lambda: find_nice_spiders(host, classes[0], (), cfg.max_path_len, cfg.gadget_budget),
            lambda found: {"count": len(found)},
        ) or []
    else:
        log.skip("spiders", "no high-degree vertices")

    taken: Set[int] = set()
    for s in spiders:
        taken |= s.vertices()
    extenders, attempts, host_partials = _collect_extenders(host, taken, cfg.gadget_budget - len(spiders), cfg, log)
    partials: List[Tuple[str, ChordedCycle]] = [
        (label, chords_of(g, Cycle(vertices=tuple(g.embed(host, c.vertices))))) for label, c in host_partials
    ]
    partials += [
        (f"extender-{i}", chords_of(g, Cycle(vertices=tuple(g.embed(host, e.cycle.vertices)))))
        for i, e in enumerate(extenders, start=1)
    ]
    inventory.spiders = len(spiders)
    inventory.extenders = len(extenders)
    inventory.extender_attempts = attempts
    inventory.spider_vertices = [_spider_record(lift_spider(g, host, s)) for s in spiders]
    inventory.extender_vertices = [_extender_record(lift_extender(g, host, e)) for e in extenders]

    candidates: List[Tuple[str, ChordedCycle]] = []
    if spiders or extenders:
        chained = log.run(
            "chain",
            lambda: chain_gadgets(host, spiders, extenders, cfg.max_link_len, retry_budget=cfg.chain_retries),
            lambda r: {"length": r.chorded.length, "chords": r.chorded.chord_count, "dropped": r.dropped},
        )
        if chained is None and len(spiders) + len(extenders) > 1:
            chained = log.run(
                "chain-prefix",
                lambda: _chain_prefix(host, spiders, extenders, cfg),
                lambda r: {"length": r.chorded.length, "chords": r.chorded.chord_count},
            )
        if chained is not None:
            inventory.chained = chained.spiders_used + chained.extenders_used
            inventory.dropped = len(spiders) + len(extenders) - inventory.chained
            lifted = Cycle(vertices=tuple(g.embed(host, chained.chorded.cycle.vertices)))
            claimed = chained.chorded.model_copy(update={
                "cycle": lifted,
                "chords": tuple(sorted(
                    tuple(sorted(g.embed(host, chord))) for chord in chained.chorded.chords
                )),
            })
            candidates.append(("chain", claimed))
    else:
        log.skip("chain", "no gadgets")

    final: Optional[ChordedCycle] = None
    source: Optional[str] = None
    if candidates:
        source, claimed = candidates[0]
        final = reverify(g, claimed)
    else:
        fallback = log.run(
            "fallback",
            lambda: _fallback_cycle(g, cfg, partials),
            lambda c: {"length": c[1].length, "chords": c[1].chord_count, "from": c[0]},
        )
        if fallback is not None:
            origin, final = fallback
            source = f"fallback:{origin}"
            diagnostics.fallback_source = origin

    result = None
    if final is not None:
        final = reverify(g, final)
        result = _result_block(final, source)

    oracle_block = None
    if with_oracle and g.vertex_count <= cfg.oracle_limit:
        run_oracle = oracle or oracle_max_chorded_cycle
        answer = log.run(
            "oracle",
            lambda: run_oracle(g, cfg.oracle_limit),
            lambda r: {"cycles": r.cycle_count, "max_chords": r.max_chords},
        )
        if answer is not None:
            ratio = None
            if result is not None and answer.max_chords > 0:
                ratio = result.chords / answer.max_chords
            if result is not None:
                verify(
                    result.chords <= answer.max_chords,
                    "pipeline found more chords than the exhaustive maximum",
                    chords=result.chords,
                    oracle=answer.max_chords,
                )
            oracle_block = OracleBlock(
                max_chords=answer.max_chords,
                per_length=answer.per_length_table,
                ratio=ratio,
            )

    log.timings["total"] = time.perf_counter() - started
    report = Report(
        input=InputBlock(**summary.model_dump(), name=name),
        config=cfg,
        seed=cfg.seed,
        stages=log.records,
        gadgets=inventory,
        diagnostics=diagnostics,
        result=result,
        oracle=oracle_block,
        timings=log.timings,
    )
    if result is not None:
        logger.info(f"[PIPELINE] cycle of length {result.length} with {result.chords} chords ({result.source})")
    else:
        logger.info("[PIPELINE] no cycle found")
    return report
