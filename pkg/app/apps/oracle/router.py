"""
Oracle router
"""
import logging

from fastapi import APIRouter, status
from fastapi.concurrency import run_in_threadpool

from app.apps.oracle.models import OracleResult
from app.apps.oracle.schemas import OracleRequest
from app.apps.oracle.services.oracle_cache import cached_max_chorded_cycle
from app.apps.oracle.utils.enumeration import oracle_max_chorded_cycle
from app.common.errors import ChordError
from app.common.http import raise_http
from app.config import ORACLE_LIMIT_N

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/max-chorded-cycle", response_model=OracleResult, status_code=status.HTTP_200_OK)
async def max_chorded_cycle(request: OracleRequest):
    """
    Cycle with the most chords, found by listing every simple cycle.
    """
    limit_n = min(request.limit_n or ORACLE_LIMIT_N, ORACLE_LIMIT_N)
    try:
        g = request.graph.to_graph()
        if request.use_cache:
            return await run_in_threadpool(cached_max_chorded_cycle, g, limit_n)
        return await run_in_threadpool(oracle_max_chorded_cycle, g, limit_n)
    except ChordError as e:
        raise_http(e)
