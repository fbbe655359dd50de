"""
Brute-force ground truth for small graphs
"""
from app.apps.oracle.utils.enumeration import oracle_max_chorded_cycle
from app.apps.oracle.utils.exhaustive import oracle_expansion, oracle_rotation_closure

__all__ = ['oracle_max_chorded_cycle', 'oracle_rotation_closure', 'oracle_expansion']
