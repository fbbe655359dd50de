"""
Cycle machinery: rotations, interlaced chords, long cycles, disjoint paths, extension, shortening
"""
from app.apps.cycles.utils.disjoint_paths import two_disjoint_paths
from app.apps.cycles.utils.extend import extend_via_disjoint_paths
from app.apps.cycles.utils.interlaced import compact_interlaced_cycle, find_interlaced_cycle
from app.apps.cycles.utils.long_cycle import find_long_cycle
from app.apps.cycles.utils.rotation import longest_path_heuristic, posa_closure
from app.apps.cycles.utils.shorten import shorten_chorded_cycle

__all__ = [
    'posa_closure', 'longest_path_heuristic', 'compact_interlaced_cycle',
    'find_interlaced_cycle', 'find_long_cycle',
    'two_disjoint_paths', 'extend_via_disjoint_paths', 'shorten_chorded_cycle',
]
