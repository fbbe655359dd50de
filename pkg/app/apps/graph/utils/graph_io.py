"""
Graph readers and writers
Edge-list (0-based, whitespace separated, '#' comments) and DIMACS (1-based)
"""
import io
import logging
from enum import Enum
from typing import IO, List, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict

from app.apps.graph.models import Graph, normalize_edge
from app.common.errors import GraphInputError

logger = logging.getLogger(__name__)


class GraphFormat(str, Enum):
    EDGE_LIST = "edge-list"
    DIMACS = "dimacs"


class LoadResult(BaseModel):
    """Parsed graph plus what was silently dropped on the way in."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    graph: Graph
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0

    @property
    def dropped(self) -> int:
        return self.dropped_self_loops + self.dropped_duplicates


def _read_lines(source: Union[bytes, IO[bytes], IO[str]]) -> List[str]:
    if isinstance(source, (bytes, bytearray)):
        raw = bytes(source)
    else:
        raw = source.read()
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise GraphInputError(f"input is not valid UTF-8: {e}") from e
    return raw.splitlines()


def _parse_int(token: str, line_no: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphInputError(f"expected an integer, got '{token}'", line=line_no)
    if value < 0:
        raise GraphInputError(f"negative vertex id {value}", line=line_no)
    return value


def _parse_edge_list(lines: List[str]) -> Tuple[int, List[Tuple[int, int, int]]]:
    pairs: List[Tuple[int, int, int]] = []
    max_id = -1
    for line_no, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise GraphInputError(f"expected 'u v', got '{stripped}'", line=line_no)
        u, v = (_parse_int(t, line_no) for t in tokens)
        pairs.append((u, v, line_no))
        max_id = max(max_id, u, v)
    return max_id + 1, pairs


def _parse_dimacs(lines: List[str]) -> Tuple[int, List[Tuple[int, int, int]]]:
    pairs: List[Tuple[int, int, int]] = []
    vertex_count = None
    declared_edges = None
    for line_no, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in ("c", "#"):
            continue
        tokens = stripped.split()
        if tokens[0] == "p":
            if len(tokens) != 4:
                raise GraphInputError(f"expected 'p edge n m', got '{stripped}'", line=line_no)
            if tokens[1] != "edge":
                raise GraphInputError(f"unsupported DIMACS format '{tokens[1]}', expected 'edge'", line=line_no)
            vertex_count = _parse_int(tokens[2], line_no)
            declared_edges = _parse_int(tokens[3], line_no)
        elif tokens[0] == "e":
            if vertex_count is None:
                raise GraphInputError("edge line before 'p' header", line=line_no)
            if len(tokens) != 3:
                raise GraphInputError(f"expected 'e u v', got '{stripped}'", line=line_no)
            u, v = (_parse_int(t, line_no) for t in tokens[1:])
            if not (1 <= u <= vertex_count and 1 <= v <= vertex_count):
                raise GraphInputError(f"vertex out of range 1..{vertex_count}", line=line_no)
            pairs.append((u - 1, v - 1, line_no))
        else:
            raise GraphInputError(f"unknown DIMACS line '{stripped}'", line=line_no)
    if vertex_count is None:
        raise GraphInputError("missing 'p edge n m' header")
    if declared_edges is not None and declared_edges != len(pairs):
        logger.warning(f"DIMACS header declares {declared_edges} edges, found {len(pairs)}")
    return vertex_count, pairs


def load_graph(
    source: Union[bytes, IO[bytes], IO[str]],
    fmt: Union[GraphFormat, str] = GraphFormat.EDGE_LIST,
) -> LoadResult:
    """
    Parse a graph from a byte stream.

    Self-loops are dropped and parallel edges merged; both counts are reported.

    Raises:
        GraphInputError: malformed line (with its line number) or no edges
    """
    fmt = GraphFormat(fmt)
    lines = _read_lines(source)
    if fmt == GraphFormat.EDGE_LIST:
        vertex_count, pairs = _parse_edge_list(lines)
    else:
        vertex_count, pairs = _parse_dimacs(lines)

    if not pairs:
        raise GraphInputError("no edges")

    seen: Set[Tuple[int, int]] = set()
    loops = 0
    duplicates = 0
    for u, v, _ in pairs:
        if u == v:
            loops += 1
            continue
        edge = normalize_edge(u, v)
        if edge in seen:
            duplicates += 1
            continue
        seen.add(edge)

    if loops or duplicates:
        logger.info(f"Dropped {loops} self-loops and {duplicates} duplicate edges")
    graph = Graph.from_edges(vertex_count, seen)
    logger.debug(f"Loaded {graph} from {fmt.value} input")
    return LoadResult(graph=graph, dropped_self_loops=loops, dropped_duplicates=duplicates)


def write_graph(g: Graph, sink: IO[str], fmt: Union[GraphFormat, str] = GraphFormat.EDGE_LIST) -> None:
    fmt = GraphFormat(fmt)
    if fmt == GraphFormat.EDGE_LIST:
        sink.write(f"# n={g.vertex_count} m={g.edge_count}\n")
        for u, v in g.edges():
            sink.write(f"{u} {v}\n")
    else:
        sink.write(f"p edge {g.vertex_count} {g.edge_count}\n")
        for u, v in g.edges():
            sink.write(f"e {u + 1} {v + 1}\n")


def dump_graph(g: Graph, fmt: Union[GraphFormat, str] = GraphFormat.EDGE_LIST) -> str:
    buffer = io.StringIO()
    write_graph(g, buffer, fmt)
    return buffer.getvalue()
