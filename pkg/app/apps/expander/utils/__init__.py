"""
Expansion checks, extraction, cleanup and connection helpers
"""
from app.apps.expander.utils.clean import clean_for_expansion
from app.apps.expander.utils.connect import connect_avoiding, find_low_diameter_set
from app.apps.expander.utils.extract import extract_expander_subgraph
from app.apps.expander.utils.verify import verify_alpha_expansion, verify_sublinear_expansion

__all__ = [
    'verify_alpha_expansion', 'verify_sublinear_expansion', 'extract_expander_subgraph',
    'clean_for_expansion', 'connect_avoiding', 'find_low_diameter_set',
]
