"""
Graph router
Generation and structural analysis of edge-list graphs
"""
import logging

from fastapi import APIRouter, HTTPException, status

from app.apps.graph.schemas import AnalyzeResponse, GenerateRequest, GenerateResponse, GraphPayload
from app.apps.graph.utils.generators import generate
from app.apps.graph.utils.structure import block_cut_tree, girth, graph_summary, min_degree_core
from app.common.errors import ChordError
from app.common.http import raise_http

logger = logging.getLogger(__name__)

router = APIRouter()

MAX_GENERATED_VERTICES = 1 << 16


@router.post("/generate", response_model=GenerateResponse, status_code=status.HTTP_200_OK)
async def generate_graph(request: GenerateRequest):
    """
    Generate a corpus graph (random regular, G(n,p) with minimum degree, complete, cycle, Petersen).
    """
    if request.n is not None and request.n > MAX_GENERATED_VERTICES:
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=f"n must be at most {MAX_GENERATED_VERTICES}",
        )
    try:
        g = generate(request.kind, request.params(), seed=request.seed)
    except ChordError as e:
        raise_http(e)
    logger.info(f"[GRAPH] generated {request.kind.value} graph {g}")
    return GenerateResponse(graph=GraphPayload.from_graph(g), summary=graph_summary(g))


@router.post("/analyze", response_model=AnalyzeResponse, status_code=status.HTTP_200_OK)
async def analyze_graph(payload: GraphPayload):
    """
    Summary, girth, block-cut structure and 2-core size of a graph.
    """
    try:
        g = payload.to_graph()
        tree = block_cut_tree(g)
        return AnalyzeResponse(
            summary=graph_summary(g),
            girth=girth(g),
            blocks=len(tree.blocks),
            cut_vertices=list(tree.cut_vertices),
            two_core_size=min_degree_core(g, 2).vertex_count,
        )
    except ChordError as e:
        raise_http(e)
