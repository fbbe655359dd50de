"""
Unit tests for rotations, interlaced cycles, long cycles, disjoint paths, extension and shortening
"""
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from app.apps.cycles.models import InterlacedCycle, interlaced
from app.apps.cycles.utils import (
    compact_interlaced_cycle,
    extend_via_disjoint_paths,
    find_interlaced_cycle,
    find_long_cycle,
    longest_path_heuristic,
    posa_closure,
    shorten_chorded_cycle,
    two_disjoint_paths,
)
from app.apps.graph.models import ChordedCycle, Cycle, Graph, Path
from app.apps.graph.utils.chords import with_chords
from app.apps.graph.utils.generators import GeneratorParams, complete, cycle, generate
from app.apps.graph.utils.traversal import is_connected
from app.apps.oracle.utils.exhaustive import oracle_rotation_closure
from app.common.errors import PreconditionError, SearchFailure
from tests.conftest import path_graph, random_regular, two_triangles
from tests.test_expander import connected_graphs


def theta_graph() -> Graph:
    """Vertices 0 and 1 joined by three internally disjoint paths of length 2, 3 and 4."""
    return Graph.from_edges(8, [(0, 2), (2, 1), (0, 3), (3, 4), (4, 1), (0, 5), (5, 6), (6, 7), (7, 1)])


def k5_with_tail_cycle(links=((5, 0), (9, 1))) -> Graph:
    """K5 on 0..4 and C8 on 5..12 joined by the given edges."""
    k5 = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    c8 = [(5 + i, 5 + (i + 1) % 8) for i in range(8)]
    return Graph.from_edges(13, k5 + c8 + list(links))


def circumference(g: Graph) -> int:
    return max((len(c) for c in nx.simple_cycles(g.to_networkx())), default=0)


class TestPosaClosure:
    """posa_closure"""

    def test_p4_from_far_end_has_no_rotation(self):
        closure = posa_closure(path_graph(4), Path(vertices=(0, 1, 2, 3)), 3)
        assert closure.endpoint_set == (0,)
        assert closure.rotation_log[0] == ()

    def test_k4_reaches_every_other_vertex(self, k4):
        closure = posa_closure(k4, Path(vertices=(0, 1, 2, 3)), 0)
        assert closure.endpoint_set == (1, 2, 3)

    def test_c5(self):
        closure = posa_closure(cycle(5), Path(vertices=(0, 1, 2, 3, 4)), 0)
        assert closure.endpoint_set == (1, 4)

    def test_single_edge_path(self):
        closure = posa_closure(path_graph(2), Path(vertices=(0, 1)), 0)
        assert closure.endpoint_set == (1,)

    def test_replay_reproduces_each_endpoint(self, petersen_graph):
        base = Path(vertices=(0, 1, 2, 3, 4, 9, 7, 5, 8, 6))
        closure = posa_closure(petersen_graph, base, 0)
        for w in closure.endpoint_set:
            rotated = closure.replay(w)
            rotated.validate_in(petersen_graph)
            assert rotated.first == 0
            assert rotated.last == w
            assert sorted(rotated.vertices) == sorted(base.vertices)

    def test_max_endpoints_stops_early(self, k20):
        closure = posa_closure(k20, Path(vertices=tuple(range(20))), 0, max_endpoints=3)
        assert len(closure.endpoint_set) == 3

    def test_not_a_path(self, c7):
        with pytest.raises(PreconditionError):
            posa_closure(c7, Path(vertices=(0, 2, 3)), 0)

    def test_fixed_must_be_an_endpoint(self, c7):
        with pytest.raises(PreconditionError):
            posa_closure(c7, Path(vertices=(0, 1, 2)), 1)

    @given(connected_graphs(min_n=3, max_n=8), st.data())
    @settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_endpoints_are_reachable_by_brute_force(self, g, data):
        p = longest_path_heuristic(g, budget=2, seed=data.draw(st.integers(0, 5)))
        fixed = data.draw(st.sampled_from([p.first, p.last]))
        closure = posa_closure(g, p, fixed)
        assert set(closure.endpoint_set) <= oracle_rotation_closure(g, p, fixed)


class TestLongestPath:
    """longest_path_heuristic"""

    def test_path_graph_is_found_whole(self):
        assert longest_path_heuristic(path_graph(9)).length == 8

    def test_complete_graph_is_traceable(self, k20):
        assert longest_path_heuristic(k20).length == 19

    def test_empty_graph(self):
        with pytest.raises(PreconditionError):
            longest_path_heuristic(Graph.empty())


class TestInterlacedCycle:
    """find_interlaced_cycle and compact_interlaced_cycle"""

    def test_interlaced_predicate(self):
        c = Cycle(vertices=(0, 1, 2, 3, 4, 5))
        assert interlaced(c, (0, 3), (1, 4))
        assert not interlaced(c, (0, 2), (3, 5))
        assert not interlaced(c, (0, 3), (3, 5))

    @pytest.mark.parametrize("n", [4, 5, 10])
    def test_complete_graphs(self, n):
        g = complete(n)
        ic = find_interlaced_cycle(g)
        ic.chorded.validate_in(g)
        (a, b), (c, d) = ic.pair
        assert interlaced(ic.cycle, (a, b), (c, d))

    def test_cycle_has_no_chords(self):
        with pytest.raises(SearchFailure):
            find_interlaced_cycle(cycle(6))

    def test_tree(self):
        with pytest.raises(SearchFailure):
            find_interlaced_cycle(path_graph(6))

    def test_edgeless(self):
        with pytest.raises(SearchFailure):
            find_interlaced_cycle(Graph.from_edges(3, []))

    def test_pair_must_be_in_cyclic_order(self, k5):
        chorded = with_chords(k5, (0, 1, 2, 3, 4))
        with pytest.raises(ValueError):
            InterlacedCycle(chorded=chorded, pair=((0, 2), (3, 1)))

    def test_compact_k10_reaches_four(self):
        g = complete(10)
        ic = find_interlaced_cycle(g)
        small = compact_interlaced_cycle(g, ic)
        assert small.cycle.length == 4
        small.chorded.validate_in(g)

    def test_compact_keeps_an_already_small_cycle(self, k4):
        ic = find_interlaced_cycle(k4)
        assert compact_interlaced_cycle(k4, ic) == ic


class TestLongCycle:
    """find_long_cycle"""

    @pytest.mark.parametrize("n", [3, 7, 12, 50])
    def test_cycle_graph_is_found_whole(self, n):
        result = find_long_cycle(cycle(n), min_len=n)
        assert result.cycle.length == n
        assert result.met_min_len

    def test_complete_graph_is_hamiltonian(self, k20):
        assert find_long_cycle(k20).cycle.length == 20

    def test_min_len_flag(self, c7):
        assert not find_long_cycle(c7, min_len=8).met_min_len

    def test_tree_is_acyclic(self):
        with pytest.raises(SearchFailure, match="acyclic"):
            find_long_cycle(path_graph(8))

    def test_disconnected(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        with pytest.raises(PreconditionError):
            find_long_cycle(g)

    def test_pendant_trees_are_ignored(self):
        edges = list(cycle(6).edges()) + [(0, 6), (6, 7), (3, 8)]
        result = find_long_cycle(Graph.from_edges(9, edges))
        assert sorted(result.cycle.vertices) == list(range(6))

    @pytest.mark.parametrize("seed", range(4))
    def test_random_cubic_close_to_circumference(self, seed):
        g = random_regular(12, 3, seed)
        if not is_connected(g):
            pytest.skip("generated graph is disconnected")
        result = find_long_cycle(g, seed=seed)
        result.cycle.validate_in(g)
        assert result.cycle.length >= 0.75 * circumference(g)


class TestTwoDisjointPaths:
    """two_disjoint_paths"""

    def test_triangles_joined_by_two_edges(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4)])
        first, second = two_disjoint_paths(g, {0, 1, 2}, {3, 4, 5})
        assert first.length == second.length == 1
        assert {first.vertices, second.vertices} == {(0, 3), (1, 4)}

    def test_shared_vertex_is_the_certificate(self):
        with pytest.raises(SearchFailure) as info:
            two_disjoint_paths(two_triangles(), {0}, {4})
        assert info.value.certificate == 2
        assert info.value.context["flow_value"] == 1

    def test_disconnected_has_no_certificate(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(SearchFailure) as info:
            two_disjoint_paths(g, {0}, {3})
        assert info.value.certificate is None

    def test_theta_graph_fan(self):
        first, second = two_disjoint_paths(theta_graph(), {0}, {1})
        for p in (first, second):
            assert (p.first, p.last) == (0, 1)
        assert not set(first.interior) & set(second.interior)

    def test_paths_avoid_terminal_sets_internally(self):
        g = cycle(8)
        first, second = two_disjoint_paths(g, {0, 1}, {4, 5})
        for p in (first, second):
            assert not set(p.interior) & {0, 1, 4, 5}

    def test_overlapping_sets(self):
        with pytest.raises(PreconditionError):
            two_disjoint_paths(cycle(5), {0, 1}, {1, 2})

    def test_empty_set(self):
        with pytest.raises(PreconditionError):
            two_disjoint_paths(cycle(5), set(), {1})

    @given(connected_graphs(min_n=4, max_n=10), st.data())
    @settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_agrees_with_local_connectivity(self, g, data):
        pairs = [(u, v) for u in g.vertices() for v in g.vertices() if u < v and not g.has_edge(u, v)]
        if not pairs:
            return
        x, y = data.draw(st.sampled_from(pairs))
        expected = nx.connectivity.local_node_connectivity(g.to_networkx(), x, y) >= 2
        try:
            first, second = two_disjoint_paths(g, {x}, {y})
        except SearchFailure:
            assert not expected
            return
        assert expected
        assert not set(first.interior) & set(second.interior)


def assert_interlacing_structure(g: Graph, ic: InterlacedCycle) -> None:
    """Recheck an interlaced cycle from raw positions, without the model helpers."""
    vertices = ic.cycle.vertices
    size = len(vertices)
    position = {v: i for i, v in enumerate(vertices)}
    assert len(position) == size >= 4
    assert all(g.has_edge(vertices[i], vertices[(i + 1) % size]) for i in range(size))
    (a, b), (c, d) = ic.pair
    assert len({a, b, c, d}) == 4
    for x, y in ic.pair:
        assert g.has_edge(x, y)
        assert (position[y] - position[x]) % size not in (1, size - 1)

    def offset(v: int) -> int:
        return (position[v] - position[a]) % size

    assert 0 < offset(c) < offset(b) < offset(d)


def min_degree_ten_corpus():
    yield pytest.param(complete(11), id="k11")
    yield pytest.param(complete(12), id="k12")
    for n in (50, 100, 200):
        for seed in range(10):
            yield pytest.param((n, seed), id=f"regular-{n}-{seed}")


class TestInterlacedCorpus:
    """find_interlaced_cycle on graphs of minimum degree at least 10"""

    @pytest.mark.parametrize("spec", min_degree_ten_corpus())
    def test_always_found(self, spec):
        g = spec if isinstance(spec, Graph) else random_regular(spec[0], 10, spec[1])
        assert g.min_degree() >= 10
        ic = find_interlaced_cycle(g)
        ic.chorded.validate_in(g)
        assert_interlacing_structure(g, ic)


def separated(g: Graph, cut: int, s, t) -> bool:
    h = g.to_networkx()
    h.remove_node(cut)
    return not any(nx.has_path(h, x, y) for x in set(s) - {cut} for y in set(t) - {cut})


def menger_instance(seed: int):
    """Sparse-to-moderate random graph with disjoint terminal sets of two or three vertices."""
    rng = np.random.default_rng(seed)
    n = 8 + seed % 13
    g = generate("gnp-min-degree", GeneratorParams(n=n, p=0.12 + (seed % 5) * 0.04, d=1), seed=seed)
    picked = rng.permutation(n).tolist()
    k = 2 + seed % 2
    return g, set(picked[:k]), set(picked[k:2 * k])


class TestMengerCorpus:
    """two_disjoint_paths against an independent vertex connectivity count"""

    @pytest.mark.parametrize("seed", range(200))
    def test_paths_exist_exactly_at_flow_two(self, seed):
        g, s, t = menger_instance(seed)
        h = g.to_networkx()
        h.add_edges_from(("source", x) for x in s)
        h.add_edges_from((y, "sink") for y in t)
        flow = nx.connectivity.local_node_connectivity(h, "source", "sink")
        try:
            first, second = two_disjoint_paths(g, s, t)
        except SearchFailure as e:
            assert flow < 2
            if e.certificate is not None:
                assert separated(g, e.certificate, s, t)
            return
        assert flow >= 2
        assert not set(first.vertices) & set(second.vertices)
        for p in (first, second):
            assert p.first in s and p.last in t
            assert not set(p.interior) & (s | t)
            assert all(g.has_edge(x, y) for x, y in zip(p.vertices, p.vertices[1:]))


class TestExtendViaDisjointPaths:
    """extend_via_disjoint_paths"""

    def test_k5_extended_through_c8(self):
        g = k5_with_tail_cycle()
        chorded = with_chords(g, (0, 1, 2, 3, 4))
        c_prime = Cycle(vertices=tuple(range(5, 13)))
        result = extend_via_disjoint_paths(g, chorded, c_prime)
        result.validate_in(g)
        assert result.chord_count >= 1
        assert len(set(result.cycle.vertices) & set(c_prime.vertices)) >= math.ceil(8 / 2)

    def test_accepts_an_interlaced_cycle(self):
        g = k5_with_tail_cycle()
        ic = find_interlaced_cycle(g.induced_subgraph(range(5)))
        ic = InterlacedCycle(chorded=with_chords(g, ic.cycle.vertices), pair=ic.pair)
        result = extend_via_disjoint_paths(g, ic, Cycle(vertices=tuple(range(5, 13))))
        assert result.chord_count >= 1

    def test_single_link_fails(self):
        g = k5_with_tail_cycle(links=((5, 0),))
        with pytest.raises(SearchFailure):
            extend_via_disjoint_paths(g, with_chords(g, (0, 1, 2, 3, 4)), Cycle(vertices=tuple(range(5, 13))))

    def test_cycles_must_be_disjoint(self, k5):
        with pytest.raises(PreconditionError):
            extend_via_disjoint_paths(k5, with_chords(k5, (0, 1, 2, 3)), Cycle(vertices=(2, 3, 4)))

    def test_needs_a_chord(self):
        g = k5_with_tail_cycle()
        bare = ChordedCycle(cycle=Cycle(vertices=(0, 1, 2)), chords=())
        with pytest.raises(PreconditionError):
            extend_via_disjoint_paths(g, bare, Cycle(vertices=tuple(range(5, 13))))


class TestShorten:
    """shorten_chorded_cycle"""

    def test_in_range_is_unchanged(self, k5):
        chorded = with_chords(k5, (0, 1, 2, 3, 4))
        result = shorten_chorded_cycle(k5, chorded, 4, 8)
        assert result.chorded == chorded
        assert result.iterations == 0
        assert not result.flagged

    def test_k20_hamilton_cycle(self, k20):
        chorded = with_chords(k20, tuple(range(20)))
        result = shorten_chorded_cycle(k20, chorded, 4, 8)
        assert 4 <= result.chorded.length <= 8
        assert result.chorded.chord_count >= 1
        assert not result.flagged
        result.chorded.validate_in(k20)

    def test_stuck_cycle_is_flagged(self):
        g = Graph.from_edges(12, list(cycle(12).edges()) + [(0, 2)])
        chorded = with_chords(g, tuple(range(12)))
        result = shorten_chorded_cycle(g, chorded, 4, 8)
        assert result.flagged
        assert result.chorded.length == 12
        assert result.chorded.chord_count == 1

    def test_shortcut_off_the_cycle(self):
        # C16 with chord (0, 2) and an off-cycle path 8-16-17-13
        edges = list(cycle(16).edges()) + [(0, 2), (8, 16), (16, 17), (17, 13)]
        g = Graph.from_edges(18, edges)
        result = shorten_chorded_cycle(g, with_chords(g, tuple(range(16))), 4, 14, r1=2, r2=0)
        assert result.chorded.length <= 14
        assert (0, 2) in result.chorded.chords
        result.chorded.validate_in(g)

    def test_bounds_must_be_ordered(self, k5):
        with pytest.raises(PreconditionError):
            shorten_chorded_cycle(k5, with_chords(k5, (0, 1, 2, 3, 4)), 5, 5)

    def test_needs_a_chord(self, c7):
        with pytest.raises(PreconditionError):
            shorten_chorded_cycle(c7, with_chords(c7, tuple(range(7))), 3, 5)

    def test_shorter_than_lo(self, k4):
        with pytest.raises(PreconditionError):
            shorten_chorded_cycle(k4, with_chords(k4, (0, 1, 2, 3)), 5, 8)
