"""
Pydantic schemas for pipeline module
"""
import math
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from app.apps.gadgets.models import DegreeDiagnostics
from app.apps.graph.schemas import GraphPayload
from app.apps.graph.utils.generators import GeneratorKind
from app.apps.graph.utils.graph_io import GraphFormat
from app.apps.graph.utils.structure import GraphSummary
from app.config import DEFAULT_SEED, ORACLE_LIMIT_N

SCHEMA_VERSION = 1


class PipelineMode(str, Enum):
    EXACT = "exact"
    HEURISTIC = "heuristic"


class PipelineConfig(BaseModel):
    """
    Pipeline knobs. Size fields left as None are filled from the input size
    by `resolve`.
    """
    min_degree_c: int = Field(16, ge=1)
    epsilon1: float = Field(1 / 16, gt=0)
    k: int = Field(2, ge=1)
    degree_threshold_m: Optional[int] = Field(None, ge=1)
    anchor_size: Optional[int] = Field(None, ge=1)
    max_cycle_len: Optional[int] = Field(None, ge=1)
    max_path_len: Optional[int] = Field(None, ge=1)
    max_link_len: Optional[int] = Field(None, ge=1)
    gadget_budget: Optional[int] = Field(None, ge=1)
    seed: int = DEFAULT_SEED
    oracle_limit: int = Field(ORACLE_LIMIT_N, ge=1)
    mode: PipelineMode = PipelineMode.HEURISTIC
    search_budget: int = Field(8, ge=1)
    chain_retries: int = Field(4, ge=0)

    @model_validator(mode="after")
    def _path_within_cycle(self) -> "PipelineConfig":
        if self.max_path_len is not None and self.max_cycle_len is not None:
            if self.max_path_len > self.max_cycle_len:
                raise ValueError("max_path_len must not exceed max_cycle_len")
        return self

    def resolve(self, n: int) -> "PipelineConfig":
        """Fill every size default for an n-vertex input."""
        log_n = math.log2(max(n, 2))
        cycle_len = self.max_cycle_len or max(1, math.ceil(log_n ** 3))
        path_len = self.max_path_len or max(1, math.ceil(log_n ** 2))
        path_len = min(path_len, cycle_len)
        return self.model_copy(update={
            "degree_threshold_m": self.degree_threshold_m or max(8, math.ceil(2 ** (log_n ** 0.25))),
            "gadget_budget": self.gadget_budget or max(2, math.ceil(log_n ** 2)),
            "max_cycle_len": cycle_len,
            "max_path_len": path_len,
            "anchor_size": self.anchor_size or max(4, math.floor(n ** 0.25)),
            "max_link_len": self.max_link_len or 2 * path_len,
        })


class StageStatus(str, Enum):
    OK = "ok"
    FAILED = "failed"
    SKIPPED = "skipped"


class StageRecord(BaseModel):
    name: str
    status: StageStatus
    elapsed: float = 0.0
    sizes: Dict[str, Any] = {}
    message: Optional[str] = None


class GadgetInventory(BaseModel):
    """Gadgets found and chained, each listed by its vertex groups for re-checking"""
    spiders: int = 0
    extenders: int = 0
    extender_attempts: int = 0
    chained: int = 0
    dropped: int = 0
    spider_vertices: List[Dict[str, Any]] = []
    extender_vertices: List[Dict[str, Any]] = []


class PipelineDiagnostics(BaseModel):
    c4_shortfall: Optional[bool] = None
    c4_average_degree: Optional[float] = None
    expander_flagged: Optional[bool] = None
    expander_rounds: Optional[int] = None
    expansion_check: Optional[str] = None
    degrees: Optional[DegreeDiagnostics] = None
    fallback_source: Optional[str] = None


class ResultBlock(BaseModel):
    length: int
    chords: int
    chord_list: List[Tuple[int, int]]
    cycle: List[int]
    chords_per_length: float
    normalized: float
    source: str


class OracleBlock(BaseModel):
    max_chords: int
    per_length: Dict[int, int]
    ratio: Optional[float] = None


class InputBlock(GraphSummary):
    name: Optional[str] = None


class Report(BaseModel):
    """Pipeline report; `timings` and stage `elapsed` are the only run-dependent fields"""
    schema_version: int = SCHEMA_VERSION
    input: InputBlock
    config: PipelineConfig
    seed: int
    stages: List[StageRecord] = []
    gadgets: GadgetInventory = GadgetInventory()
    diagnostics: PipelineDiagnostics = PipelineDiagnostics()
    result: Optional[ResultBlock] = None
    oracle: Optional[OracleBlock] = None
    timings: Dict[str, float] = {}

    def stage(self, name: str) -> Optional[StageRecord]:
        return next((s for s in self.stages if s.name == name), None)


class GeneratorSpec(BaseModel):
    kind: GeneratorKind
    n: Optional[int] = Field(None, ge=1)
    d: Optional[int] = Field(None, ge=0)
    p: Optional[float] = Field(None, ge=0, le=1)
    girth: Optional[int] = Field(None, ge=3)
    seed: int = 0


class CorpusEntry(BaseModel):
    """One manifest entry: a graph file or a generator spec"""
    name: str = Field(..., min_length=1)
    path: Optional[str] = None
    format: GraphFormat = GraphFormat.EDGE_LIST
    generator: Optional[GeneratorSpec] = None
    family: Optional[str] = None

    @model_validator(mode="after")
    def _one_source(self) -> "CorpusEntry":
        if (self.path is None) == (self.generator is None):
            raise ValueError(f"entry '{self.name}' needs exactly one of path or generator")
        return self

    @property
    def family_name(self) -> str:
        if self.family:
            return self.family
        return self.generator.kind.value if self.generator is not None else "file"


class CorpusManifest(BaseModel):
    entries: List[CorpusEntry]


class CorpusRow(BaseModel):
    name: str
    family: str
    status: str
    n: Optional[int] = None
    length: Optional[int] = None
    chords: Optional[int] = None
    normalized: Optional[float] = None
    oracle_max_chords: Optional[int] = None
    oracle_ratio: Optional[float] = None
    report_path: Optional[str] = None
    message: Optional[str] = None


class CorpusSummary(BaseModel):
    rows: List[CorpusRow]
    aggregate: List[Dict[str, Any]]
    out_dir: str


class PipelineRunRequest(BaseModel):
    """HTTP pipeline request: a graph plus config overrides"""
    graph: GraphPayload
    config: PipelineConfig = PipelineConfig()
    name: Optional[str] = None
    with_oracle: bool = True
