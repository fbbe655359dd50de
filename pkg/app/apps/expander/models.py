"""
Expansion domain models
"""
import math
from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from app.apps.graph.models import Graph


class CheckMode(str, Enum):
    EXACT = "exact"
    SAMPLED = "sampled"


class ExpansionProfile(BaseModel):
    """(epsilon1, k) sublinear expansion profile; logarithms are base 2."""
    model_config = ConfigDict(frozen=True)

    epsilon1: float = Field(default=1 / 16, gt=0)
    k: int = Field(default=2, ge=1)

    def epsilon(self, x: float) -> float:
        """Expansion factor required of a set of size x."""
        if x < self.k / 5:
            return 0.0
        return self.epsilon1 / math.log2(15 * x / self.k) ** 2

    def required(self, size: int) -> float:
        return self.epsilon(size) * size

    def size_range(self, n: int) -> Tuple[int, int]:
        """Sizes |X| with k/2 <= |X| <= n/2."""
        return math.ceil(self.k / 2), n // 2


class ExpansionCertificate(BaseModel):
    """Outcome of an expansion check; a failing certificate carries a re-checkable witness."""

    mode: CheckMode
    passed: bool
    witness: Optional[Tuple[int, ...]] = None
    witness_neighborhood: Optional[int] = None
    required: Optional[float] = None
    checked_sizes: Tuple[int, int]
    sets_checked: int = 0

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


class ExpanderResult(BaseModel):
    """Subgraph left by the extraction process, with its degree figures."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    graph: Graph
    rounds: int
    source_average_degree: float
    average_degree: float
    min_degree: int
    flagged_small: bool
