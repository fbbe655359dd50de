"""
Pipeline router
"""
import logging

from fastapi import APIRouter, HTTPException, status
from fastapi.concurrency import run_in_threadpool

from app.apps.oracle.services.oracle_cache import cached_max_chorded_cycle
from app.apps.pipeline.schemas import PipelineRunRequest, Report
from app.apps.pipeline.utils.runner import run_pipeline
from app.common.errors import ChordError
from app.common.http import raise_http

logger = logging.getLogger(__name__)

router = APIRouter()

MAX_PIPELINE_VERTICES = 1 << 14


@router.post("/run", response_model=Report, status_code=status.HTTP_200_OK)
async def run(request: PipelineRunRequest):
    """
    Run the full pipeline on an edge-list graph and return its report.
    """
    try:
        g = request.graph.to_graph()
    except ChordError as e:
        raise_http(e)
    if g.vertex_count > MAX_PIPELINE_VERTICES:
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=f"graph must have at most {MAX_PIPELINE_VERTICES} vertices",
        )
    try:
        report = await run_in_threadpool(
            run_pipeline, g, request.config, request.name, request.with_oracle, cached_max_chorded_cycle,
        )
    except ChordError as e:
        raise_http(e)
    logger.info(f"[PIPELINE] http run on {g}: {report.result.chords if report.result else 'no'} chords")
    return report
