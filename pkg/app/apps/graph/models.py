"""
Graph domain models
Immutable simple graph plus the path / cycle / chorded-cycle value types
every other module consumes
"""
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from app.common.errors import PreconditionError, VerificationError

Edge = Tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """
    Immutable undirected simple graph on vertices 0 .. vertex_count-1.

    `labels[v]` is the id of v in the graph this one was derived from, so
    objects found inside a subgraph can be lifted back to input ids.
    """

    __slots__ = ("vertex_count", "adjacency", "labels", "_neighbor_sets", "_edge_count")

    def __init__(
        self,
        vertex_count: int,
        adjacency: Sequence[Sequence[int]],
        labels: Optional[Sequence[int]] = None,
    ):
        if vertex_count < 0:
            raise PreconditionError("vertex_count must be non-negative")
        if len(adjacency) != vertex_count:
            raise PreconditionError(
                f"adjacency has {len(adjacency)} rows for {vertex_count} vertices"
            )
        self.vertex_count = vertex_count
        self.adjacency: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(row)) for row in adjacency)
        self.labels: Tuple[int, ...] = (
            tuple(labels) if labels is not None else tuple(range(vertex_count))
        )
        if len(self.labels) != vertex_count:
            raise PreconditionError("labels must name every vertex")
        self._neighbor_sets: Optional[Tuple[FrozenSet[int], ...]] = None
        self._edge_count = sum(len(row) for row in self.adjacency) // 2
        self._check_invariants()

    def _check_invariants(self) -> None:
        sets = self.neighbor_sets
        for u, row in enumerate(self.adjacency):
            if len(sets[u]) != len(row):
                raise VerificationError(f"duplicate neighbor at vertex {u}")
            if u in sets[u]:
                raise VerificationError(f"self-loop at vertex {u}")
            for v in row:
                if not 0 <= v < self.vertex_count:
                    raise VerificationError(f"neighbor {v} of {u} out of range")
                if u not in sets[v]:
                    raise VerificationError(f"asymmetric adjacency between {u} and {v}")

    # construction helpers

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[Tuple[int, int]],
        labels: Optional[Sequence[int]] = None,
    ) -> "Graph":
        """Build a graph from an edge iterable; duplicate edges are merged."""
        rows: List[Set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise PreconditionError(f"edge ({u}, {v}) out of range for n={vertex_count}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(vertex_count, rows, labels)

    @classmethod
    def empty(cls) -> "Graph":
        return cls(0, [])

    # basic queries

    def __len__(self) -> int:
        return self.vertex_count

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"

    @property
    def neighbor_sets(self) -> Tuple[FrozenSet[int], ...]:
        if self._neighbor_sets is None:
            self._neighbor_sets = tuple(frozenset(row) for row in self.adjacency)
        return self._neighbor_sets

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def vertices(self) -> range:
        return range(self.vertex_count)

    def edges(self) -> Iterator[Edge]:
        for u, row in enumerate(self.adjacency):
            for v in row:
                if u < v:
                    yield (u, v)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(row) for row in self.adjacency), dtype=np.int64, count=self.vertex_count)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def average_degree(self) -> float:
        """d(G) = 2|E| / |V|; zero for the empty graph."""
        if self.vertex_count == 0:
            return 0.0
        return 2.0 * self.edge_count / self.vertex_count

    def min_degree(self) -> int:
        return int(self.degrees().min()) if self.vertex_count else 0

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.vertex_count else 0

    def neighborhood(self, vertices: Iterable[int], within: Optional[Set[int]] = None) -> Set[int]:
        """N(X): vertices outside X adjacent to X, optionally restricted to `within`."""
        xs = set(vertices)
        result: Set[int] = set()
        for u in xs:
            result.update(self.adjacency[u])
        result -= xs
        if within is not None:
            result &= within
        return result

    # derived graphs

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph on `vertices`, relabelled to 0..k-1 in increasing order."""
        keep = sorted(set(vertices))
        index: Dict[int, int] = {v: i for i, v in enumerate(keep)}
        rows = [[index[w] for w in self.adjacency[v] if w in index] for v in keep]
        return Graph(len(keep), rows, [self.labels[v] for v in keep])

    def without(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return self.induced_subgraph(v for v in range(self.vertex_count) if v not in drop)

    def without_edges(self, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Same vertex set with the given edges removed; labels kept."""
        rows = [set(row) for row in self.adjacency]
        for u, v in edges:
            rows[u].discard(v)
            rows[v].discard(u)
        return Graph(self.vertex_count, rows, self.labels)

    def lift(self, v: int) -> int:
        return self.labels[v]

    def lift_all(self, vertices: Iterable[int]) -> List[int]:
        return [self.labels[v] for v in vertices]

    def local_index(self) -> Dict[int, int]:
        """Map from label to local id."""
        return {label: v for v, label in enumerate(self.labels)}

    def embed(self, child: "Graph", vertices: Iterable[int]) -> List[int]:
        """Local ids here of vertices of a subgraph derived from this graph."""
        index = self.local_index()
        return [index[child.labels[v]] for v in vertices]

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.vertex_count))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    def canonical_edges(self) -> List[Edge]:
        return sorted(self.edges())


class Path(BaseModel):
    """A simple path; consecutive vertices adjacent in the host graph."""
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[int, ...]

    @field_validator("vertices")
    @classmethod
    def _distinct(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if not value:
            raise ValueError("a path needs at least one vertex")
        if len(set(value)) != len(value):
            raise ValueError("path repeats a vertex")
        return value

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def first(self) -> int:
        return self.vertices[0]

    @property
    def last(self) -> int:
        return self.vertices[-1]

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    def reversed(self) -> "Path":
        return Path(vertices=tuple(reversed(self.vertices)))

    def validate_in(self, g: Graph) -> None:
        for u, v in zip(self.vertices, self.vertices[1:]):
            if not g.has_edge(u, v):
                raise VerificationError(f"path step {u}-{v} is not an edge", path=list(self.vertices))


class Cycle(BaseModel):
    """Cyclic sequence of at least three distinct vertices."""
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[int, ...]

    @field_validator("vertices")
    @classmethod
    def _distinct(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(value) < 3:
            raise ValueError("a cycle needs at least three vertices")
        if len(set(value)) != len(value):
            raise ValueError("cycle repeats a vertex")
        return value

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> List[Edge]:
        vs = self.vertices
        return [normalize_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def positions(self) -> Dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def consecutive(self, u: int, v: int) -> bool:
        pos = self.positions()
        if u not in pos or v not in pos:
            return False
        gap = abs(pos[u] - pos[v])
        return gap == 1 or gap == len(self.vertices) - 1

    def validate_in(self, g: Graph) -> None:
        for u, v in self.edges():
            if not g.has_edge(u, v):
                raise VerificationError(f"cycle step {u}-{v} is not an edge", cycle=list(self.vertices))


class ChordedCycle(BaseModel):
    """A cycle together with chords: host edges between non-consecutive cycle vertices."""
    model_config = ConfigDict(frozen=True)

    cycle: Cycle
    chords: Tuple[Edge, ...] = ()

    @model_validator(mode="after")
    def _chords_on_cycle(self) -> "ChordedCycle":
        pos = self.cycle.positions()
        size = len(pos)
        for u, v in self.chords:
            if u not in pos or v not in pos:
                raise ValueError(f"chord {u}-{v} has an endpoint off the cycle")
            gap = abs(pos[u] - pos[v])
            if gap in (0, 1, size - 1):
                raise ValueError(f"chord {u}-{v} joins consecutive cycle vertices")
        return self

    @property
    def length(self) -> int:
        return self.cycle.length

    @property
    def chord_count(self) -> int:
        return len(self.chords)

    def validate_in(self, g: Graph) -> None:
        self.cycle.validate_in(g)
        for u, v in self.chords:
            if not g.has_edge(u, v):
                raise VerificationError(f"chord {u}-{v} is not a host edge")


class BlockCutTree(BaseModel):
    """Blocks (maximal 2-connected subgraphs or bridges) and their cut-vertex incidences."""
    model_config = ConfigDict(frozen=True)

    blocks: Tuple[Tuple[int, ...], ...]
    block_edges: Tuple[Tuple[Edge, ...], ...]
    cut_vertices: Tuple[int, ...]
    tree_edges: Tuple[Tuple[int, int], ...]  # (block index, cut vertex)

    def blocks_of(self, v: int) -> List[int]:
        return [i for i, block in enumerate(self.blocks) if v in block]
