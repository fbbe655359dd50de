"""
Oracle domain models
"""
from typing import Dict, Optional

from pydantic import BaseModel, ConfigDict

from app.apps.graph.models import ChordedCycle, Graph
from app.common.storage import sha256_text


def instance_hash(g: Graph) -> str:
    """sha256 of the vertex count and the sorted edge list."""
    lines = [str(g.vertex_count)] + [f"{u} {v}" for u, v in g.canonical_edges()]
    return sha256_text("\n".join(lines))


class OracleResult(BaseModel):
    """
    Exhaustive maximum-chord answer for one small graph.

    `per_length_table[l]` is the most chords any l-cycle has; `best_cycle` is
    None only for acyclic graphs, whose table is empty.
    """
    model_config = ConfigDict(frozen=True)

    best_cycle: Optional[ChordedCycle] = None
    max_chords: int = 0
    per_length_table: Dict[int, int] = {}
    instance_hash: str
    cycle_count: int = 0
