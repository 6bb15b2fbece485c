"""
Graph construction service.
Builds validated graphs from edge lists, named generators and Cartesian products.
"""

import logging
from typing import Iterable, Optional, Sequence, Tuple

import networkx as nx

from app.models.graph import Graph, Partition, VertexSet
from app.utils.exceptions import InputError

logger = logging.getLogger(__name__)

GENERATOR_KINDS = ("complete", "cycle", "path", "star", "hypercube", "petersen", "family_h", "random")


def build_graph(
    n: int,
    edges: Iterable[Tuple[int, int]],
    labels: Optional[Sequence[str]] = None
) -> Graph:
    """
    Build a simple undirected graph from an edge list.

    Args:
        n: Number of vertices (0-indexed)
        edges: Vertex pairs, in either orientation
        labels: Optional per-vertex labels

    Returns:
        Graph with symmetric adjacency and m == number of pairs given

    Raises:
        InputError: On out-of-range endpoints, self-loops or repeated pairs
    """
    normalized = []
    seen = set()
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise InputError(f"edge ({u}, {v}) is repeated")
        seen.add(key)
        normalized.append(key)

    return Graph(
        n=n,
        edges=tuple(sorted(normalized)),
        labels=tuple(labels) if labels is not None else None
    )


def graph_from_networkx(nx_graph: nx.Graph, keep_labels: bool = False) -> Graph:
    """
    Convert a networkx graph, numbering vertices in sorted node order.

    Args:
        nx_graph: Simple undirected networkx graph
        keep_labels: Store str(node) as the vertex label

    Returns:
        Graph
    """
    nodes = sorted(nx_graph.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    edges = [(index[a], index[b]) for a, b in nx_graph.edges()]
    labels = [str(node) for node in nodes] if keep_labels else None
    return build_graph(len(nodes), edges, labels)


def to_networkx(graph: Graph) -> nx.Graph:
    """networkx view of a graph (vertices 0..n-1)."""
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(graph.vertices)
    nx_graph.add_edges_from(graph.edges)
    return nx_graph


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """
    Cartesian product g1 □ g2.

    Vertex (u, v) is numbered u * n2 + v and labelled "(label1,label2)".
    (u1, v1) ~ (u2, v2) iff u1 == u2 and v1 ~ v2, or v1 == v2 and u1 ~ u2.

    Raises:
        InputError: If either factor has no vertices
    """
    if g1.n == 0 or g2.n == 0:
        raise InputError("Cartesian product requires two nonempty graphs")

    product = nx.cartesian_product(to_networkx(g1), to_networkx(g2))
    n2 = g2.n
    edges = [(a[0] * n2 + a[1], b[0] * n2 + b[1]) for a, b in product.edges()]
    labels = [f"({g1.label(u)},{g2.label(v)})" for u in g1.vertices for v in g2.vertices]

    graph = build_graph(g1.n * n2, edges, labels)
    logger.debug("built product of orders %d x %d: n=%d m=%d", g1.n, n2, graph.n, graph.m)
    return graph


def product_vertex(u: int, v: int, n2: int) -> int:
    """Index of the product vertex (u, v)."""
    return u * n2 + v


def family_h(r: int, k: int) -> Graph:
    """
    The member K_{r+k} □ K_r of the family H.

    Raises:
        InputError: Unless r > 1 and r + k > 0
    """
    if r <= 1 or r + k <= 0:
        raise InputError(f"family H requires r > 1 and r + k > 0, got r={r}, k={k}")
    return cartesian_product(generate("complete", r + k), generate("complete", r))


def family_h_blocks(r: int, k: int) -> Partition:
    """
    The blocks V_1..V_r of family_h(r, k): block j holds the copy of K_{r+k}
    over the j-th vertex of K_r.
    """
    if r <= 1 or r + k <= 0:
        raise InputError(f"family H requires r > 1 and r + k > 0, got r={r}, k={k}")
    n = r * (r + k)
    return Partition(n, tuple(
        VertexSet.of(n, (product_vertex(u, j, r) for u in range(r + k)))
        for j in range(r)
    ))


def _integral(kind: str, value: float) -> int:
    """Integer value of a generator parameter; 4.0 is accepted, 4.5 is not."""
    try:
        number = float(value)
    except (TypeError, ValueError) as e:
        raise InputError(f"generator '{kind}' got a non-numeric parameter {value!r}") from e
    if not number.is_integer():
        raise InputError(f"generator '{kind}' needs integer parameters, got {value!r}")
    return int(number)


def generate(kind: str, *params: float) -> Graph:
    """
    Named graph generators.

    Args:
        kind: One of complete n | cycle n | path n | star t | hypercube d |
              petersen | family_h r k | random n p seed
        params: Integer parameters of the generator (p is a probability)

    Returns:
        Graph

    Raises:
        InputError: Unknown kind or parameters outside the generator's domain
    """
    kind = kind.replace("-", "_").lower()
    expected = {
        "complete": 1, "cycle": 1, "path": 1, "star": 1, "hypercube": 1,
        "petersen": 0, "family_h": 2, "random": 3,
    }
    if kind not in expected:
        raise InputError(f"unknown generator '{kind}', expected one of {', '.join(GENERATOR_KINDS)}")
    if len(params) != expected[kind]:
        raise InputError(f"generator '{kind}' takes {expected[kind]} parameter(s), got {len(params)}")

    if kind == "family_h":
        return family_h(_integral(kind, params[0]), _integral(kind, params[1]))
    if kind == "petersen":
        return graph_from_networkx(nx.petersen_graph())
    if kind == "random":
        n, p, seed = _integral(kind, params[0]), float(params[1]), _integral(kind, params[2])
        if n < 1 or not 0.0 <= p <= 1.0:
            raise InputError(f"random graph needs n >= 1 and 0 <= p <= 1, got n={n}, p={p}")
        return graph_from_networkx(nx.gnp_random_graph(n, p, seed=seed))

    size = _integral(kind, params[0])
    minimum = {"complete": 1, "cycle": 3, "path": 1, "star": 1, "hypercube": 1}[kind]
    if size < minimum:
        raise InputError(f"generator '{kind}' needs a parameter >= {minimum}, got {size}")

    if kind == "complete":
        return graph_from_networkx(nx.complete_graph(size))
    if kind == "cycle":
        return graph_from_networkx(nx.cycle_graph(size))
    if kind == "path":
        return graph_from_networkx(nx.path_graph(size))
    if kind == "star":
        return graph_from_networkx(nx.star_graph(size))
    return graph_from_networkx(nx.hypercube_graph(size))
