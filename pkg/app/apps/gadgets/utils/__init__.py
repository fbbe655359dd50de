"""
Gadgets: degree classes, nice spiders, dangerous vertices, routing, extenders, chaining
"""
from app.apps.gadgets.utils.chain import chain_gadgets
from app.apps.gadgets.utils.extender import build_cycle_extender
from app.apps.gadgets.utils.routing import dangerous_vertices, route_to_anchor_sets
from app.apps.gadgets.utils.spiders import classify_degrees, degree_diagnostics, find_nice_spiders
from app.apps.gadgets.utils.validate import validate_extender, validate_spider

__all__ = [
    'classify_degrees', 'degree_diagnostics', 'find_nice_spiders', 'dangerous_vertices',
    'route_to_anchor_sets', 'build_cycle_extender', 'chain_gadgets',
    'validate_spider', 'validate_extender',
]
