"""
Command-line entry point
run, corpus, oracle, gen and serve; toolkit errors become exit codes
"""
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar

import typer
from pydantic import ValidationError

from app.apps.graph.models import Graph
from app.apps.graph.utils.generators import GeneratorKind, GeneratorParams, generate
from app.apps.graph.utils.graph_io import GraphFormat, load_graph, write_graph
from app.apps.oracle.services.oracle_cache import OracleCache, cached_max_chorded_cycle
from app.apps.oracle.utils.enumeration import oracle_max_chorded_cycle
from app.apps.pipeline.schemas import PipelineConfig, PipelineMode
from app.apps.pipeline.utils.corpus import run_corpus
from app.apps.pipeline.utils.runner import run_pipeline
from app.common.errors import ChordError, GraphInputError
from app.common.storage import write_json_atomic
from app.config import CORPUS_WORKERS, DEBUG, DEFAULT_SEED, ORACLE_CACHE_DIR, ORACLE_LIMIT_N, PORT, REPORTS_DIR

logger = logging.getLogger(__name__)

T = TypeVar("T")

EXIT_NO_CYCLE = 1
EXIT_INPUT = 2

app = typer.Typer(help="Long cycles with many chords.", no_args_is_help=True)


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging")):
    logging.basicConfig(
        level=logging.DEBUG if (DEBUG or verbose) else logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )


def _guarded(fn: Callable[[], T]) -> T:
    try:
        return fn()
    except ChordError as e:
        typer.echo(f"error: {e.message}", err=True)
        raise typer.Exit(code=e.exit_code)
    except ValidationError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=EXIT_INPUT)


def _read(path: Path, fmt: GraphFormat) -> Graph:
    try:
        with path.open("rb") as handle:
            return load_graph(handle, fmt).graph
    except OSError as e:
        raise GraphInputError(f"cannot open {path}: {e}")


def _emit(data: Any, out: Optional[Path]) -> None:
    if out is None:
        typer.echo(json.dumps(data, indent=2, sort_keys=True))
    else:
        write_json_atomic(out, data)
        typer.echo(f"wrote {out}", err=True)


def _rational(text: str) -> float:
    """Accepts 0.0625 or 1/16."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise typer.BadParameter(f"not a rational number: {text}")


@app.command()
def run(
    input: Path = typer.Option(..., "--input", "-i", help="Graph file"),
    format: GraphFormat = typer.Option(GraphFormat.EDGE_LIST, "--format", "-f"),
    seed: int = typer.Option(DEFAULT_SEED, "--seed"),
    min_degree_c: int = typer.Option(16, "--min-degree-c"),
    epsilon1: str = typer.Option("1/16", "--epsilon1", help="Expansion constant, e.g. 1/16"),
    k: int = typer.Option(2, "--k"),
    m: Optional[int] = typer.Option(None, "--m", help="Degree threshold for the high-degree class"),
    anchor_size: Optional[int] = typer.Option(None, "--anchor-size"),
    max_cycle_len: Optional[int] = typer.Option(None, "--max-cycle-len"),
    max_path_len: Optional[int] = typer.Option(None, "--max-path-len"),
    max_link_len: Optional[int] = typer.Option(None, "--max-link-len"),
    gadget_budget: Optional[int] = typer.Option(None, "--gadget-budget"),
    oracle_limit: int = typer.Option(ORACLE_LIMIT_N, "--oracle-limit"),
    mode: PipelineMode = typer.Option(PipelineMode.HEURISTIC, "--mode"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Report file; stdout when omitted"),
):
    """Run the pipeline on one graph and write its JSON report."""
    def go():
        g = _read(input, format)
        cfg = PipelineConfig(
            min_degree_c=min_degree_c,
            epsilon1=_rational(epsilon1),
            k=k,
            degree_threshold_m=m,
            anchor_size=anchor_size,
            max_cycle_len=max_cycle_len,
            max_path_len=max_path_len,
            max_link_len=max_link_len,
            gadget_budget=gadget_budget,
            seed=seed,
            oracle_limit=oracle_limit,
            mode=mode,
        )
        return run_pipeline(g, cfg, name=input.stem, oracle=cached_max_chorded_cycle)

    report = _guarded(go)
    _emit(report.model_dump(mode="json"), out)
    if report.result is None:
        typer.echo("no cycle found", err=True)
        raise typer.Exit(code=EXIT_NO_CYCLE)


@app.command()
def corpus(
    manifest: Path = typer.Option(..., "--manifest", help="JSON manifest with an 'entries' list"),
    workers: int = typer.Option(CORPUS_WORKERS, "--workers", min=1),
    out: Path = typer.Option(REPORTS_DIR, "--out", help="Report directory"),
    seed: int = typer.Option(DEFAULT_SEED, "--seed"),
    cache: bool = typer.Option(True, "--cache/--no-cache", help="Use the oracle cache"),
):
    """Run the pipeline over a manifest and write per-entry reports plus summary tables."""
    cache_dir = ORACLE_CACHE_DIR if cache else None
    summary = _guarded(lambda: run_corpus(manifest, PipelineConfig(seed=seed), out, workers, cache_dir))
    failed = sum(1 for row in summary.rows if row.status == "error")
    typer.echo(f"{len(summary.rows)} entries, {failed} failed; summary in {summary.out_dir}")


@app.command()
def oracle(
    input: Path = typer.Option(..., "--input", "-i"),
    format: GraphFormat = typer.Option(GraphFormat.EDGE_LIST, "--format", "-f"),
    limit_n: int = typer.Option(ORACLE_LIMIT_N, "--limit-n"),
    workers: int = typer.Option(1, "--workers", min=1),
    cache: bool = typer.Option(True, "--cache/--no-cache"),
):
    """Print the exhaustive maximum-chord cycle of a small graph."""
    def go():
        g = _read(input, format)
        if cache:
            return cached_max_chorded_cycle(g, limit_n, OracleCache(ORACLE_CACHE_DIR), workers)
        return oracle_max_chorded_cycle(g, limit_n, workers)

    result = _guarded(go)
    _emit(result.model_dump(mode="json"), None)


@app.command()
def gen(
    kind: GeneratorKind = typer.Option(..., "--kind"),
    n: Optional[int] = typer.Option(None, "--n"),
    d: Optional[int] = typer.Option(None, "--d"),
    p: Optional[float] = typer.Option(None, "--p"),
    girth: Optional[int] = typer.Option(None, "--girth"),
    seed: int = typer.Option(DEFAULT_SEED, "--seed"),
    format: GraphFormat = typer.Option(GraphFormat.EDGE_LIST, "--format", "-f"),
    out: Path = typer.Option(..., "--out", "-o"),
):
    """Generate a corpus graph file."""
    g = _guarded(lambda: generate(kind, GeneratorParams(n=n, d=d, p=p, girth=girth), seed=seed))
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as sink:
        write_graph(g, sink, format)
    typer.echo(f"wrote {g} to {out}", err=True)


@app.command()
def serve(
    host: str = typer.Option("0.0.0.0", "--host"),
    port: int = typer.Option(PORT, "--port"),
):
    """Start the HTTP API."""
    import uvicorn
    uvicorn.run("app.main:app", host=host, port=port, reload=DEBUG, log_level="debug" if DEBUG else "info")


if __name__ == "__main__":
    app()
