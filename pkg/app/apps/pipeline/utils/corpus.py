"""
Corpus runner
Runs the pipeline over every manifest entry and aggregates the reports per family and size
"""
import asyncio
import json
import logging
import math
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd
from pydantic import ValidationError

from app.apps.graph.models import Graph
from app.apps.graph.utils.generators import GeneratorParams, generate
from app.apps.graph.utils.graph_io import load_graph
from app.apps.oracle.services.oracle_cache import OracleCache, cached_max_chorded_cycle
from app.apps.pipeline.schemas import CorpusEntry, CorpusManifest, CorpusRow, CorpusSummary, PipelineConfig
from app.apps.pipeline.utils.runner import run_pipeline
from app.common.errors import ChordError, GraphInputError
from app.common.storage import write_json_atomic
from app.config import CORPUS_WORKERS, REPORTS_DIR

logger = logging.getLogger(__name__)

AGGREGATE_COLUMNS = ["family", "n", "graphs", "median_length", "median_chords", "median_normalized"]


def load_manifest(path: Union[str, Path]) -> CorpusManifest:
    """
    Read a corpus manifest.

    Raises:
        GraphInputError: unreadable, malformed or empty manifest
    """
    target = Path(path)
    try:
        raw = json.loads(target.read_text(encoding="utf-8"))
        manifest = CorpusManifest.model_validate(raw)
    except (OSError, ValueError, ValidationError) as e:
        raise GraphInputError(f"cannot read manifest {target}: {e}")
    if not manifest.entries:
        raise GraphInputError(f"manifest {target} lists no entries")
    names = [entry.name for entry in manifest.entries]
    if len(set(names)) != len(names):
        raise GraphInputError("manifest entry names must be unique")
    return manifest


def entry_graph(entry: CorpusEntry, base_dir: Path) -> Graph:
    if entry.generator is not None:
        spec = entry.generator
        params = GeneratorParams(n=spec.n, d=spec.d, p=spec.p, girth=spec.girth)
        return generate(spec.kind, params, seed=spec.seed)
    source = Path(entry.path)
    if not source.is_absolute():
        source = base_dir / source
    try:
        with source.open("rb") as handle:
            return load_graph(handle, entry.format).graph
    except OSError as e:
        raise GraphInputError(f"cannot open {source}: {e}")


def _run_entry(
    entry_data: Dict[str, Any],
    config_data: Dict[str, Any],
    base_dir: str,
    out_dir: str,
    cache_dir: Optional[str],
) -> Dict[str, Any]:
    """One manifest entry end to end; runs in a worker, so arguments are plain data."""
    entry = CorpusEntry.model_validate(entry_data)
    cfg = PipelineConfig.model_validate(config_data)
    row = CorpusRow(name=entry.name, family=entry.family_name, status="error")
    try:
        g = entry_graph(entry, Path(base_dir))
        row.n = g.vertex_count
        oracle = None
        if cache_dir is not None:
            cache = OracleCache(cache_dir)
            oracle = partial(cached_max_chorded_cycle, cache=cache)
        report = run_pipeline(g, cfg, name=entry.name, oracle=oracle)
    except ChordError as e:
        logger.warning(f"[CORPUS] {entry.name}: {e.message}")
        row.message = e.message
        return row.model_dump()

    target = write_json_atomic(Path(out_dir) / f"{entry.name}.json", report.model_dump(mode="json"))
    row.report_path = str(target)
    if report.result is None:
        row.status = "no-cycle"
    else:
        row.status = "ok"
        row.length = report.result.length
        row.chords = report.result.chords
        row.normalized = report.result.normalized
    if report.oracle is not None:
        row.oracle_max_chords = report.oracle.max_chords
        row.oracle_ratio = report.oracle.ratio
    return row.model_dump()


def aggregate_rows(rows: List[CorpusRow]) -> pd.DataFrame:
    """Median length, chords and normalized ratio per (family, n) over successful rows."""
    frame = pd.DataFrame([row.model_dump() for row in rows if row.status == "ok"])
    if frame.empty:
        return pd.DataFrame(columns=AGGREGATE_COLUMNS)
    grouped = frame.groupby(["family", "n"], sort=True)
    table = grouped.agg(
        graphs=("name", "count"),
        median_length=("length", "median"),
        median_chords=("chords", "median"),
        median_normalized=("normalized", "median"),
    ).reset_index()
    return table[AGGREGATE_COLUMNS]


def _records(table: pd.DataFrame) -> List[Dict[str, Any]]:
    records = []
    for record in table.to_dict(orient="records"):
        clean = {}
        for key, value in record.items():
            if hasattr(value, "item"):
                value = value.item()
            if isinstance(value, float) and math.isnan(value):
                value = None
            clean[key] = value
        records.append(clean)
    return records


async def run_corpus_async(
    manifest_path: Union[str, Path],
    overrides: Optional[PipelineConfig] = None,
    out_dir: Union[str, Path] = REPORTS_DIR,
    workers: int = CORPUS_WORKERS,
    cache_dir: Optional[Union[str, Path]] = None,
) -> CorpusSummary:
    """
    Run the pipeline on every manifest entry, at most `workers` at a time.

    Each entry's report goes to `<out_dir>/<name>.json`; the rows and the
    per-family aggregate go to summary.json and summary.csv. A failing entry
    becomes an error row and the run continues.

    Raises:
        GraphInputError: manifest unreadable or empty
    """
    manifest = load_manifest(manifest_path)
    cfg = overrides or PipelineConfig()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    base_dir = str(Path(manifest_path).resolve().parent)
    cache = str(cache_dir) if cache_dir is not None else None
    workers = max(1, workers)
    logger.info(f"[CORPUS] {len(manifest.entries)} entries, {workers} workers, reports in {out}")

    executor: Executor
    if workers > 1:
        executor = ProcessPoolExecutor(max_workers=workers)
    else:
        executor = ThreadPoolExecutor(max_workers=1)
    semaphore = asyncio.Semaphore(workers)
    loop = asyncio.get_running_loop()

    async def one(entry: CorpusEntry) -> CorpusRow:
        async with semaphore:
            data = await loop.run_in_executor(
                executor,
                _run_entry,
                entry.model_dump(mode="json"),
                cfg.model_dump(mode="json"),
                base_dir,
                str(out),
                cache,
            )
            row = CorpusRow.model_validate(data)
            logger.info(f"[CORPUS] {row.name}: {row.status} chords={row.chords}")
            return row

    try:
        rows = await asyncio.gather(*(one(entry) for entry in manifest.entries))
    finally:
        executor.shutdown(wait=True)

    table = aggregate_rows(list(rows))
    table.to_csv(out / "summary.csv", index=False)
    summary = CorpusSummary(rows=list(rows), aggregate=_records(table), out_dir=str(out))
    write_json_atomic(out / "summary.json", summary.model_dump(mode="json"))
    return summary


def run_corpus(
    manifest_path: Union[str, Path],
    overrides: Optional[PipelineConfig] = None,
    out_dir: Union[str, Path] = REPORTS_DIR,
    workers: int = CORPUS_WORKERS,
    cache_dir: Optional[Union[str, Path]] = None,
) -> CorpusSummary:
    return asyncio.run(run_corpus_async(manifest_path, overrides, out_dir, workers, cache_dir))
