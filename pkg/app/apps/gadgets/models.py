"""
Gadget domain models
Nice spiders, cycle extenders, dangerous sets and the parameters that size them
"""
import math
from typing import Dict, List, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.apps.graph.models import ChordedCycle, Cycle, Edge, Path
from app.common.errors import PreconditionError


class NiceSpider(BaseModel):
    """
    Three legs from a common center to leaves z1, z2, z3 in L.

    The leg to z2 is the single edge center-z2; the center-z2 edge becomes a
    chord once the spider is chained.
    """
    model_config = ConfigDict(frozen=True)

    center: int
    leaves: Tuple[int, int, int]
    legs: Tuple[Path, Path, Path]
    max_leg_len: int

    def vertices(self) -> Set[int]:
        out = {self.center}
        for leg in self.legs:
            out.update(leg.vertices)
        return out

    @property
    def chord(self) -> Edge:
        z2 = self.leaves[1]
        return (min(self.center, z2), max(self.center, z2))


class CycleExtender(BaseModel):
    """
    A short cycle, two disjoint paths leaving it at consecutive vertices, and
    the two anchor sets holding the far ends of those paths.

    `anchor_depths` records the BFS depth of each anchor from its path's far
    endpoint, measured when the extender was assembled.
    """
    model_config = ConfigDict(frozen=True)

    cycle: Cycle
    p1: Path
    p2: Path
    a1: Tuple[int, ...]
    a2: Tuple[int, ...]
    anchor_size: int
    max_cycle_len: int
    max_path_len: int
    anchor_depths: Tuple[int, int] = (0, 0)

    def vertices(self) -> Set[int]:
        out = set(self.cycle.vertices)
        out.update(self.p1.vertices)
        out.update(self.p2.vertices)
        out.update(self.a1)
        out.update(self.a2)
        return out

    @property
    def chord(self) -> Edge:
        a, b = self.p1.first, self.p2.first
        return (min(a, b), max(a, b))


class RootedTree(BaseModel):
    """Spanning tree given by a parent map; the root maps to None."""
    model_config = ConfigDict(frozen=True)

    root: int
    parent: Dict[int, Optional[int]]

    @model_validator(mode="after")
    def _rooted(self) -> "RootedTree":
        if self.parent.get(self.root, -1) is not None:
            raise ValueError("the root must map to None")
        for v, p in self.parent.items():
            if v != self.root and (p is None or p not in self.parent):
                raise ValueError(f"vertex {v} has no parent in the tree")
        return self

    def children(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if p is not None:
                out[p].append(v)
        return out

    def depth_order(self) -> List[int]:
        """Vertices with every parent before its children."""
        kids = self.children()
        order = [self.root]
        for v in order:
            order.extend(sorted(kids[v]))
        if len(order) != len(self.parent):
            raise PreconditionError("parent map does not form a tree rooted at root")
        return order


class DangerousSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    tree: RootedTree
    threshold: int
    dangerous: Tuple[int, ...]


class GadgetSizeParams(BaseModel):
    """Sizes every gadget search works to."""
    anchor_size: int = Field(4, ge=1)
    max_cycle_len: int = Field(64, ge=4)
    max_path_len: int = Field(16, ge=1)
    danger_threshold: Optional[int] = Field(None, ge=1)
    anchor_diameter: Optional[int] = Field(None, ge=1)
    shorten_lo: int = Field(4, ge=3)
    clean_alpha: float = Field(0.25, gt=0)
    core_degree: int = Field(10, ge=1)
    search_budget: int = Field(8, ge=1)
    seed: int = 0

    @model_validator(mode="after")
    def _consistent(self) -> "GadgetSizeParams":
        if self.shorten_lo >= self.max_cycle_len:
            raise ValueError("shorten_lo must be below max_cycle_len")
        return self

    @property
    def threshold(self) -> int:
        if self.danger_threshold is not None:
            return self.danger_threshold
        return max(2, self.anchor_size // 16)

    @property
    def diameter(self) -> int:
        if self.anchor_diameter is not None:
            return self.anchor_diameter
        return max(2, 2 * math.ceil(math.log2(4 * self.anchor_size)))


class RoutingResult(BaseModel):
    """Two same-side routes from a chorded cycle into two shrunken anchors."""
    model_config = ConfigDict(frozen=True)

    i: int
    j: int
    a_i_prime: Tuple[int, ...]
    a_j_prime: Tuple[int, ...]
    p_i: Path
    p_j: Path
    chord: Edge


class DegreeDiagnostics(BaseModel):
    """High-degree counts reported per run; never asserted."""
    m: int
    l_size: int
    r_size: int
    r_ratio: float
    l_ratio: float


class ChainResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    chorded: ChordedCycle
    spiders_used: int
    extenders_used: int
    dropped: int
    designated_chords: Tuple[Edge, ...]
