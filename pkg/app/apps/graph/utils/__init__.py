"""
Graph core operations
"""
from app.apps.graph.utils.c4 import extract_c4_free_subgraph, is_c4_free
from app.apps.graph.utils.chords import chords_of, reverify
from app.apps.graph.utils.generators import generate
from app.apps.graph.utils.graph_io import load_graph, write_graph
from app.apps.graph.utils.structure import block_cut_tree, girth, graph_summary, min_degree_core

__all__ = [
    'load_graph', 'write_graph', 'generate', 'min_degree_core', 'block_cut_tree',
    'chords_of', 'reverify', 'is_c4_free', 'extract_c4_free_subgraph', 'girth', 'graph_summary',
]
