"""
Unit tests for graph core: parsing, generators, peeling, blocks, chords and C4 removal
"""
import io

import networkx as nx
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from app.apps.graph.models import ChordedCycle, Cycle, Graph, Path
from app.apps.graph.utils.c4 import extract_c4_free_subgraph, is_c4_free
from app.apps.graph.utils.chords import chord_edges, chords_of, reverify
from app.apps.graph.utils.generators import GeneratorParams, complete, cycle, generate, petersen
from app.apps.graph.utils.graph_io import GraphFormat, dump_graph, load_graph
from app.apps.graph.utils.structure import (
    block_cut_tree,
    girth,
    graph_summary,
    min_degree_core,
    two_core_components,
)
from app.common.errors import GraphInputError, PreconditionError, VerificationError
from tests.conftest import path_graph, two_triangles

PETERSEN_NINE_CYCLE = (1, 2, 3, 4, 9, 7, 5, 8, 6)


@st.composite
def small_graphs(draw, max_n: int = 9):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, edges)


class TestLoadGraph:
    """Edge-list and DIMACS parsing"""

    def test_triangle(self):
        result = load_graph(b"0 1\n1 2\n2 0")
        assert result.graph.vertex_count == 3
        assert result.graph.edge_count == 3
        assert result.dropped == 0

    def test_duplicates_and_loops_are_dropped_and_counted(self):
        result = load_graph(b"0 1\n0 1\n1 1")
        assert result.graph.vertex_count == 2
        assert result.graph.canonical_edges() == [(0, 1)]
        assert result.dropped_self_loops == 1
        assert result.dropped_duplicates == 1
        assert result.dropped == 2

    def test_empty_stream(self):
        with pytest.raises(GraphInputError, match="no edges"):
            load_graph(b"")

    def test_comments_only_is_empty(self):
        with pytest.raises(GraphInputError, match="no edges"):
            load_graph(io.BytesIO(b"# nothing here\n\n"))

    def test_malformed_line_reports_line_number(self):
        with pytest.raises(GraphInputError) as info:
            load_graph(b"0 1\n1 x\n")
        assert info.value.context["line"] == 2
        assert "line 2" in info.value.message

    def test_three_tokens_rejected(self):
        with pytest.raises(GraphInputError):
            load_graph(b"0 1 2\n")

    def test_negative_id_rejected(self):
        with pytest.raises(GraphInputError):
            load_graph(b"0 -1\n")

    def test_dimacs_is_one_based(self):
        result = load_graph(b"c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n", GraphFormat.DIMACS)
        assert result.graph.canonical_edges() == [(0, 1), (0, 2), (1, 2)]

    def test_dimacs_keeps_isolated_vertices_from_header(self):
        result = load_graph(b"p edge 5 1\ne 1 2\n", "dimacs")
        assert result.graph.vertex_count == 5

    def test_dimacs_without_header(self):
        with pytest.raises(GraphInputError):
            load_graph(b"e 1 2\n", GraphFormat.DIMACS)

    def test_dimacs_vertex_out_of_range(self):
        with pytest.raises(GraphInputError):
            load_graph(b"p edge 2 1\ne 1 3\n", GraphFormat.DIMACS)

    @pytest.mark.parametrize("header", [b"p sp 3 2", b"p col 3 2", b"p edges 3 2"])
    def test_dimacs_rejects_other_formats(self, header):
        with pytest.raises(GraphInputError) as exc:
            load_graph(b"c comment\n" + header + b"\ne 1 2\ne 2 3\n", GraphFormat.DIMACS)
        assert exc.value.context["line"] == 2
        assert "edge" in exc.value.message

    def test_text_stream_accepted(self):
        result = load_graph(io.StringIO("0 1\n1 2\n"))
        assert result.graph.edge_count == 2

    @pytest.mark.parametrize("fmt", [GraphFormat.EDGE_LIST, GraphFormat.DIMACS])
    def test_written_graph_reads_back(self, fmt):
        g = petersen()
        again = load_graph(dump_graph(g, fmt).encode(), fmt).graph
        assert again == g


class TestGraphModel:
    """Graph invariants, labels and derived graphs"""

    def test_self_loop_rejected(self):
        with pytest.raises(PreconditionError):
            Graph.from_edges(2, [(1, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(PreconditionError):
            Graph.from_edges(2, [(0, 2)])

    def test_asymmetric_adjacency_rejected(self):
        with pytest.raises(VerificationError):
            Graph(2, [[1], []])

    def test_degree_queries(self):
        g = two_triangles()
        assert g.degree(2) == 4
        assert g.min_degree() == 2
        assert g.max_degree() == 4
        assert g.average_degree() == pytest.approx(12 / 5)

    def test_neighborhood_excludes_the_set(self):
        g = path_graph(5)
        assert g.neighborhood({1, 2}) == {0, 3}
        assert g.neighborhood({1, 2}, within={3, 4}) == {3}

    def test_induced_subgraph_composes_labels(self):
        g = path_graph(6)
        h = g.induced_subgraph([2, 3, 4, 5])
        assert h.labels == (2, 3, 4, 5)
        k = h.without([0])
        assert k.labels == (3, 4, 5)
        assert g.embed(k, [0, 2]) == [3, 5]
        assert h.embed(k, [1]) == [3]

    def test_without_edges_keeps_vertices(self):
        g = complete(4).without_edges([(0, 1)])
        assert g.vertex_count == 4
        assert not g.has_edge(0, 1)
        assert g.edge_count == 5

    def test_to_networkx(self):
        nx_graph = petersen().to_networkx()
        assert nx_graph.number_of_nodes() == 10
        assert nx_graph.number_of_edges() == 15

    def test_path_and_cycle_reject_repeats(self):
        with pytest.raises(ValueError):
            Path(vertices=(0, 1, 0))
        with pytest.raises(ValueError):
            Cycle(vertices=(0, 1))

    def test_cycle_consecutive_wraps(self):
        c = Cycle(vertices=(4, 2, 7, 1))
        assert c.consecutive(1, 4)
        assert not c.consecutive(4, 7)


class TestGenerate:
    """Seeded corpus generators"""

    def test_complete(self):
        g = generate("complete", GeneratorParams(n=5))
        assert g.edge_count == 10

    def test_random_regular_degrees(self):
        g = generate("random-regular", GeneratorParams(n=10, d=3), seed=7)
        assert g.vertex_count == 10
        assert all(g.degree(v) == 3 for v in g.vertices())

    def test_random_regular_is_deterministic(self):
        first = generate("random-regular", GeneratorParams(n=40, d=4), seed=3)
        second = generate("random-regular", GeneratorParams(n=40, d=4), seed=3)
        assert first == second

    def test_petersen(self):
        g = generate("petersen")
        assert (g.vertex_count, g.edge_count) == (10, 15)
        assert girth(g) == 5

    def test_gnp_min_degree_tops_up(self):
        g = generate("gnp-min-degree", GeneratorParams(n=30, p=0.05, d=3), seed=2)
        assert g.min_degree() >= 3

    def test_high_girth_regular(self):
        g = generate("high-girth-regular", GeneratorParams(n=20, d=3, girth=4), seed=1)
        assert all(g.degree(v) == 3 for v in g.vertices())
        assert girth(g) >= 4

    def test_odd_degree_sum_rejected(self):
        with pytest.raises(GraphInputError):
            generate("random-regular", GeneratorParams(n=5, d=3))

    def test_missing_parameter(self):
        with pytest.raises(GraphInputError, match="'d'"):
            generate("random-regular", GeneratorParams(n=10))

    def test_short_cycle_rejected(self):
        with pytest.raises(GraphInputError):
            cycle(2)


class TestStructure:
    """Peeling, block-cut decomposition, girth and summaries"""

    def test_path_core_is_empty(self):
        assert min_degree_core(path_graph(5), 2).vertex_count == 0

    def test_cycle_is_its_own_core(self):
        core = min_degree_core(cycle(5), 2)
        assert core == cycle(5)

    def test_k4_plus_pendant(self):
        g = Graph.from_edges(5, list(complete(4).edges()) + [(3, 4)])
        core = min_degree_core(g, 3)
        assert core.labels == (0, 1, 2, 3)
        assert core.edge_count == 6

    def test_two_triangles_block_cut(self):
        tree = block_cut_tree(two_triangles())
        assert len(tree.blocks) == 2
        assert tree.cut_vertices == (2,)
        assert tree.blocks_of(2) == [0, 1]

    def test_tree_blocks_are_bridges(self):
        tree = block_cut_tree(path_graph(5))
        assert len(tree.blocks) == 4
        assert all(len(edges) == 1 for edges in tree.block_edges)

    def test_cycle_single_block(self):
        tree = block_cut_tree(cycle(5))
        assert len(tree.blocks) == 1
        assert tree.cut_vertices == ()

    def test_girth_values(self):
        assert girth(complete(4)) == 3
        assert girth(cycle(7)) == 7
        assert girth(path_graph(6)) is None

    def test_summary(self):
        summary = graph_summary(petersen())
        assert (summary.n, summary.m, summary.min_degree, summary.max_degree) == (10, 15, 3, 3)
        assert summary.average_degree == 3.0
        assert summary.girth_at_most_4 is False
        assert graph_summary(complete(4)).girth_at_most_4 is True

    def test_two_core_components_of_forest(self):
        assert two_core_components(path_graph(8)) == []

    def test_two_core_components_largest_first(self):
        g = Graph.from_edges(8, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3), (6, 7)])
        parts = two_core_components(g)
        assert [p.vertex_count for p in parts] == [4, 3]
        assert parts[0].labels == (3, 4, 5, 6)

    @given(small_graphs())
    @settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
    def test_core_matches_networkx(self, g):
        for d in (1, 2, 3):
            core = min_degree_core(g, d)
            expected = set(nx.k_core(g.to_networkx(), d).nodes())
            assert set(core.labels) == expected

    @given(small_graphs())
    @settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
    def test_blocks_partition_edges(self, g):
        tree = block_cut_tree(g)
        seen = [e for edges in tree.block_edges for e in edges]
        assert sorted(seen) == g.canonical_edges()
        assert set(tree.cut_vertices) == set(nx.articulation_points(g.to_networkx()))


class TestChords:
    """Chord accounting and re-verification"""

    def test_k5_hamilton_cycle(self):
        cc = chords_of(complete(5), Cycle(vertices=(0, 1, 2, 3, 4)))
        assert cc.chord_count == 5

    def test_triangle_has_no_chords(self):
        assert chords_of(complete(6), Cycle(vertices=(0, 3, 5))).chord_count == 0

    def test_petersen_nine_cycle(self):
        cc = chords_of(petersen(), Cycle(vertices=PETERSEN_NINE_CYCLE))
        assert cc.chords == ((2, 7), (3, 8), (6, 9))

    def test_non_cycle_rejected(self):
        with pytest.raises(PreconditionError):
            chords_of(cycle(6), Cycle(vertices=(0, 1, 3)))

    def test_chord_between_consecutive_vertices_rejected(self):
        with pytest.raises(ValueError):
            ChordedCycle(cycle=Cycle(vertices=(0, 1, 2, 3)), chords=((0, 1),))

    def test_reverify_catches_a_false_claim(self):
        g = cycle(6)
        claimed = ChordedCycle(cycle=Cycle(vertices=(0, 1, 2, 3, 4, 5)), chords=((0, 3),))
        with pytest.raises(VerificationError):
            reverify(g, claimed)

    def test_reverify_returns_the_full_chord_set(self):
        g = complete(5)
        claimed = ChordedCycle(cycle=Cycle(vertices=(0, 1, 2, 3, 4)), chords=((0, 2),))
        assert reverify(g, claimed).chord_count == 5

    @given(small_graphs(max_n=8), st.randoms(use_true_random=False))
    @settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
    def test_chords_match_definition(self, g, rnd):
        order = list(g.vertices())
        rnd.shuffle(order)
        size = len(order)
        expected = set()
        for i in range(size):
            for j in range(i + 2, size):
                if i == 0 and j == size - 1:
                    continue
                u, v = order[i], order[j]
                if g.has_edge(u, v):
                    expected.add((min(u, v), max(u, v)))
        assert set(chord_edges(g, order)) == expected


class TestC4:
    """4-cycle detection and removal"""

    def test_k4_has_a_four_cycle(self):
        g = complete(4)
        check = is_c4_free(g)
        assert not check.free
        assert check.witness.length == 4
        check.witness.validate_in(g)

    def test_petersen_is_c4_free(self):
        assert is_c4_free(petersen()).free

    def test_tree_is_c4_free(self):
        assert is_c4_free(path_graph(7)).free

    def test_petersen_unchanged(self):
        result = extract_c4_free_subgraph(petersen(), 3)
        assert result.graph == petersen()
        assert result.removed_edges == 0
        assert not result.shortfall

    def test_k6_keeps_average_degree_two(self):
        result = extract_c4_free_subgraph(complete(6), 2)
        assert is_c4_free(result.graph).free
        assert result.average_degree >= 2
        assert not result.shortfall
        assert result.removed_edges == 15 - result.graph.edge_count

    def test_single_edge_shortfall(self):
        result = extract_c4_free_subgraph(Graph.from_edges(2, [(0, 1)]), 10)
        assert result.shortfall
        assert result.target_average_degree == 10

    def test_result_keeps_labels(self):
        h = complete(8).induced_subgraph([2, 3, 4, 5, 6])
        assert extract_c4_free_subgraph(h, 1).graph.labels == (2, 3, 4, 5, 6)

    @given(small_graphs())
    @settings(max_examples=40, suppress_health_check=[HealthCheck.too_slow])
    def test_extraction_is_c4_free_subgraph(self, g):
        result = extract_c4_free_subgraph(g, 1)
        assert is_c4_free(result.graph).free
        assert set(result.graph.edges()) <= set(g.edges())
