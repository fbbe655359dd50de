"""
Cycle engine domain models
"""
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from app.apps.graph.models import ChordedCycle, Cycle, Edge, Path, normalize_edge
from app.common.errors import VerificationError

Rotation = Tuple[Edge, Edge]  # (broken edge, inserted edge)


def rotate(vertices: List[int], pivot_index: int) -> Tuple[List[int], Rotation]:
    """
    One Posa rotation at the free end (last vertex).

    The end y is adjacent to vertices[pivot_index]; the edge from the pivot to
    its successor is broken and the segment after the pivot is reversed, so
    the successor becomes the new free end.
    """
    end = vertices[-1]
    pivot = vertices[pivot_index]
    successor = vertices[pivot_index + 1]
    rotated = vertices[: pivot_index + 1] + vertices[:pivot_index:-1]
    return rotated, (normalize_edge(pivot, successor), normalize_edge(pivot, end))


class RotationClosure(BaseModel):
    """
    Endpoints reachable by Posa rotations that keep `fixed_endpoint` in place.

    `rotation_log[w]` is the sequence of (broken, inserted) edge pairs that
    turns `base_path` into a path from the fixed endpoint to w.
    """
    model_config = ConfigDict(frozen=True)

    base_path: Path
    fixed_endpoint: int
    endpoint_set: Tuple[int, ...]
    rotation_log: Dict[int, Tuple[Rotation, ...]]

    def oriented_base(self) -> List[int]:
        vertices = list(self.base_path.vertices)
        if vertices[0] != self.fixed_endpoint:
            vertices.reverse()
        return vertices

    def replay(self, endpoint: int) -> Path:
        """Apply the logged rotations for `endpoint` and return the resulting path."""
        vertices = self.oriented_base()
        for broken, inserted in self.rotation_log[endpoint]:
            end = vertices[-1]
            pivot = inserted[0] if inserted[1] == end else inserted[1]
            index = vertices.index(pivot)
            vertices, step = rotate(vertices, index)
            if step != (broken, inserted):
                raise VerificationError(f"rotation log for {endpoint} does not replay", step=step)
        if vertices[-1] != endpoint:
            raise VerificationError(f"rotation log for {endpoint} ends at {vertices[-1]}")
        return Path(vertices=tuple(vertices))


def cyclic_order(cycle: Cycle, vertices: Tuple[int, ...]) -> bool:
    """Whether `vertices` appear in this cyclic order walking the cycle forward."""
    pos = cycle.positions()
    start = pos[vertices[0]]
    size = cycle.length
    offsets = [(pos[v] - start) % size for v in vertices]
    return all(a < b for a, b in zip(offsets, offsets[1:]))


def interlaced(cycle: Cycle, first: Edge, second: Edge) -> bool:
    """Two chords interlace iff their four distinct endpoints alternate around the cycle."""
    a, b = first
    c, d = second
    if len({a, b, c, d}) < 4:
        return False
    return cyclic_order(cycle, (a, c, b, d)) or cyclic_order(cycle, (a, d, b, c))


class InterlacedCycle(BaseModel):
    """A chorded cycle with two chords (a, b), (c, d) met in cyclic order a, c, b, d."""
    model_config = ConfigDict(frozen=True)

    chorded: ChordedCycle
    pair: Tuple[Edge, Edge]

    @model_validator(mode="after")
    def _strictly_interlaced(self) -> "InterlacedCycle":
        if self.chorded.chord_count < 2:
            raise ValueError("an interlaced cycle needs at least two chords")
        chords = {normalize_edge(*e) for e in self.chorded.chords}
        (a, b), (c, d) = self.pair
        if normalize_edge(a, b) not in chords or normalize_edge(c, d) not in chords:
            raise ValueError("interlacing pair must be chords of the cycle")
        if not cyclic_order(self.chorded.cycle, (a, c, b, d)):
            raise ValueError("chord endpoints are not in cyclic order a, c, b, d")
        return self

    @property
    def cycle(self) -> Cycle:
        return self.chorded.cycle


class LongCycleResult(BaseModel):
    cycle: Cycle
    met_min_len: bool


class ShortenResult(BaseModel):
    chorded: ChordedCycle
    flagged: bool
    iterations: int
