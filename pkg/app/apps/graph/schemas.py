"""
Pydantic schemas for graph module
"""
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from app.apps.graph.models import Graph
from app.apps.graph.utils.generators import GeneratorKind, GeneratorParams
from app.apps.graph.utils.structure import GraphSummary
from app.common.errors import GraphInputError


class GraphPayload(BaseModel):
    """Edge-list graph in a request or response body"""
    vertex_count: Optional[int] = Field(None, ge=0)
    edges: List[Tuple[int, int]]

    @model_validator(mode="after")
    def _in_range(self) -> "GraphPayload":
        if any(u < 0 or v < 0 for u, v in self.edges):
            raise ValueError("vertex ids must be non-negative")
        if self.vertex_count is not None and any(max(e) >= self.vertex_count for e in self.edges):
            raise ValueError("edge endpoint outside vertex_count")
        return self

    def to_graph(self) -> Graph:
        """Self-loops are dropped and parallel edges merged, as when reading a file."""
        edges = [(u, v) for u, v in self.edges if u != v]
        if not edges:
            raise GraphInputError("no edges")
        n = self.vertex_count if self.vertex_count is not None else 1 + max(max(e) for e in edges)
        return Graph.from_edges(n, edges)

    @classmethod
    def from_graph(cls, g: Graph) -> "GraphPayload":
        return cls(vertex_count=g.vertex_count, edges=g.canonical_edges())


class GenerateRequest(BaseModel):
    """Graph generator request schema"""
    kind: GeneratorKind
    n: Optional[int] = Field(None, ge=1)
    d: Optional[int] = Field(None, ge=0)
    p: Optional[float] = Field(None, ge=0, le=1)
    girth: Optional[int] = Field(None, ge=3)
    seed: int = 0

    def params(self) -> GeneratorParams:
        return GeneratorParams(n=self.n, d=self.d, p=self.p, girth=self.girth)


class GenerateResponse(BaseModel):
    graph: GraphPayload
    summary: GraphSummary


class AnalyzeResponse(BaseModel):
    """Structural summary plus the block-cut and 2-core figures"""
    summary: GraphSummary
    girth: Optional[int] = None
    blocks: int
    cut_vertices: List[int]
    two_core_size: int
