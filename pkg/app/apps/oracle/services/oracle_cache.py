"""
Oracle cache service
On-disk store with one JSON document per instance hash
"""
import logging
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from app.apps.graph.models import Graph
from app.apps.oracle.models import OracleResult, instance_hash
from app.apps.oracle.utils.enumeration import oracle_max_chorded_cycle
from app.common.errors import GraphTooLarge
from app.common.storage import read_json, write_json_atomic
from app.config import ORACLE_CACHE_DIR, ORACLE_LIMIT_N

logger = logging.getLogger(__name__)

# Singleton instance
_oracle_cache = None


def get_oracle_cache() -> "OracleCache":
    """Get the oracle cache rooted at ORACLE_CACHE_DIR (singleton pattern)"""
    global _oracle_cache
    if _oracle_cache is None:
        _oracle_cache = OracleCache()
    return _oracle_cache


class OracleCache:
    """Directory of cached OracleResults named `<instance_hash>.json`."""

    def __init__(self, directory: Union[str, Path] = ORACLE_CACHE_DIR):
        self.directory = Path(directory)

    def path_for(self, digest: str) -> Path:
        return self.directory / f"{digest}.json"

    def get(self, digest: str) -> Optional[OracleResult]:
        data = read_json(self.path_for(digest))
        if data is None:
            return None
        try:
            return OracleResult.model_validate(data)
        except ValidationError:
            logger.warning(f"[ORACLE] ignoring unreadable cache entry {digest}", exc_info=True)
            return None

    def put(self, result: OracleResult) -> Path:
        return write_json_atomic(self.path_for(result.instance_hash), result.model_dump(mode="json"))


def cached_max_chorded_cycle(
    g: Graph,
    limit_n: int = ORACLE_LIMIT_N,
    cache: Optional[OracleCache] = None,
    workers: int = 1,
) -> OracleResult:
    """oracle_max_chorded_cycle backed by the cache; a hit skips enumeration."""
    if g.vertex_count > limit_n:
        raise GraphTooLarge(f"oracle enumeration needs n <= {limit_n}, got {g.vertex_count}")
    cache = cache if cache is not None else get_oracle_cache()
    digest = instance_hash(g)
    hit = cache.get(digest)
    if hit is not None:
        logger.debug(f"[ORACLE] cache hit {digest[:12]}")
        return hit
    result = oracle_max_chorded_cycle(g, limit_n=limit_n, workers=workers)
    cache.put(result)
    return result
