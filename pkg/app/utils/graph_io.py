"""
Edge-list text format.

    # comment lines start with '#'
    n m
    u v        (m lines, 0-indexed, u < v)

Vertex labels, when a graph carries them, are written as comment lines of
the form "#label <v> <text>" so that files stay readable by any edge-list
reader while write-then-parse is an identity. <text> is everything after the
single space that follows <v>, kept verbatim; each vertex is labelled once.
"""

import re
from pathlib import Path
from typing import Dict, List, Tuple, Union

from app.models.graph import Graph
from app.services.graph_builder import build_graph
from app.utils.exceptions import GraphParseError, InputError

LABEL_PREFIX = "#label"
_LABEL_LINE = re.compile(r"#label (-?\d+) (.*)")


def format_graph(graph: Graph) -> str:
    """Serialize a graph to the edge-list format."""
    lines = [f"{graph.n} {graph.m}"]
    if graph.labels is not None:
        lines.extend(f"{LABEL_PREFIX} {v} {label}" for v, label in enumerate(graph.labels))
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> Graph:
    """
    Parse the edge-list format.

    Raises:
        GraphParseError: Malformed line, repeated edge, repeated label, self-loop,
            vertex out of range, or edge count not matching the header
    """
    header: Tuple[int, int] = None
    edges: List[Tuple[int, int]] = []
    seen: Dict[Tuple[int, int], int] = {}
    labels: Dict[int, str] = {}
    label_lines: Dict[int, int] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(LABEL_PREFIX + " "):
            match = _LABEL_LINE.fullmatch(raw.lstrip())
            if match is None:
                raise GraphParseError(f"malformed label line '{line}'", number)
            vertex = int(match.group(1))
            if vertex in labels:
                raise GraphParseError(f"vertex {vertex} is already labelled on line {label_lines[vertex]}", number)
            labels[vertex] = match.group(2)
            label_lines[vertex] = number
            continue
        if line.startswith("#"):
            continue

        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected two integers, got '{line}'", number)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"expected two integers, got '{line}'", number) from None

        if header is None:
            if a < 0 or b < 0:
                raise GraphParseError("header counts must be non-negative", number)
            header = (a, b)
            continue

        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphParseError(f"vertex out of range 0..{n - 1} in '{line}'", number)
        if a == b:
            raise GraphParseError(f"self-loop at vertex {a}", number)
        key = (a, b) if a < b else (b, a)
        if key in seen:
            raise GraphParseError(f"edge {key} repeats line {seen[key]}", number)
        seen[key] = number
        edges.append(key)

    if header is None:
        raise GraphParseError("missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise GraphParseError(f"header declares {m} edges but {len(edges)} were given")

    label_tuple = None
    if labels:
        if sorted(labels) != list(range(n)):
            raise GraphParseError("label lines must cover every vertex exactly once")
        label_tuple = tuple(labels[v] for v in range(n))

    try:
        return build_graph(n, edges, label_tuple)
    except InputError as exc:
        raise GraphParseError(str(exc)) from exc


def parse_graph_file(path: Union[str, Path]) -> Graph:
    """Read and parse an edge-list file."""
    path = Path(path)
    if not path.is_file():
        raise GraphParseError(f"graph file '{path}' does not exist")
    return parse_graph_text(path.read_text(encoding="utf-8"))


def write_graph_file(graph: Graph, path: Union[str, Path]) -> Path:
    """Write a graph in the edge-list format and return the path written."""
    path = Path(path)
    path.write_text(format_graph(graph), encoding="utf-8")
    return path
