"""
Oracle cache service module
"""
from app.apps.oracle.services.oracle_cache import OracleCache, cached_max_chorded_cycle, get_oracle_cache

__all__ = ['OracleCache', 'cached_max_chorded_cycle', 'get_oracle_cache']
