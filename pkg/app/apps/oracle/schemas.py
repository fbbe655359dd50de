"""
Pydantic schemas for oracle module
"""
from typing import Optional

from pydantic import BaseModel, Field

from app.apps.graph.schemas import GraphPayload


class OracleRequest(BaseModel):
    """Exhaustive max-chord request; small graphs only"""
    graph: GraphPayload
    limit_n: Optional[int] = Field(None, ge=1)
    use_cache: bool = True
