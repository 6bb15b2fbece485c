"""
Defensive k-alliance predicates and counters.

A nonempty set S is a defensive k-alliance when every v in S satisfies
delta_S(v) >= delta_{S-bar}(v) + k, equivalently delta(v) >= 2 delta_{S-bar}(v) + k.
Both the predicates here and the exact solvers read the per-vertex threshold
from required_inside(), so there is a single place where the condition lives.
"""

from typing import List

from app.models.graph import Graph, Partition, VertexSet, iter_bits
from app.schemas.results import CutSummary
from app.utils.exceptions import InputError


def required_inside(degree: int, k: int) -> int:
    """
    Smallest number of neighbors inside S that lets a vertex of this degree
    satisfy the alliance condition: ceil((degree + k) / 2).
    """
    return -((-(degree + k)) // 2)


def _check_set(graph: Graph, s: VertexSet) -> None:
    if s.n != graph.n:
        raise InputError(f"vertex set is over {s.n} vertices, graph has {graph.n}")


def _check_candidate(graph: Graph, s: VertexSet) -> None:
    _check_set(graph, s)
    if s.is_empty:
        raise InputError("an alliance candidate must be a nonempty set")


def degree_in(graph: Graph, v: int, s: VertexSet) -> int:
    """
    delta_S(v): number of neighbors of v inside s.

    Raises:
        InputError: If v is not a vertex of the graph
    """
    _check_set(graph, s)
    graph._check_vertex(v)
    return (graph.adjacency[v] & s.mask).bit_count()


def is_defensive_alliance(graph: Graph, s: VertexSet, k: int) -> bool:
    """
    True iff every member v of s has delta_S(v) >= delta_{S-bar}(v) + k.

    k is not restricted to -Delta..Delta; the condition is simply evaluated.

    Raises:
        InputError: If s is empty
    """
    _check_candidate(graph, s)
    adjacency, degrees = graph.adjacency, graph.degrees
    for v in iter_bits(s.mask):
        if (adjacency[v] & s.mask).bit_count() < required_inside(degrees[v], k):
            return False
    return True


def is_dominating(graph: Graph, s: VertexSet) -> bool:
    """True iff every vertex outside s has a neighbor in s."""
    _check_candidate(graph, s)
    outside = graph.full_mask & ~s.mask
    return all(graph.adjacency[u] & s.mask for u in iter_bits(outside))


def is_global_defensive_alliance(graph: Graph, s: VertexSet, k: int) -> bool:
    """Defensive k-alliance that is also a dominating set."""
    return is_defensive_alliance(graph, s, k) and is_dominating(graph, s)


def alliance_strength(graph: Graph, s: VertexSet) -> int:
    """
    Largest k for which s is a defensive k-alliance, evaluated through the
    form delta(v) - 2 delta_{S-bar}(v), independently of required_inside().
    """
    _check_candidate(graph, s)
    outside = graph.full_mask & ~s.mask
    return min(
        graph.degrees[v] - 2 * (graph.adjacency[v] & outside).bit_count()
        for v in iter_bits(s.mask)
    )


def boundary_size(graph: Graph, s: VertexSet) -> int:
    """Number of edges with exactly one endpoint in s."""
    _check_set(graph, s)
    outside = graph.full_mask & ~s.mask
    return sum((graph.adjacency[v] & outside).bit_count() for v in iter_bits(s.mask))


def induced_size(graph: Graph, s: VertexSet) -> int:
    """Number of edges of the subgraph induced by s."""
    _check_set(graph, s)
    return sum((graph.adjacency[v] & s.mask).bit_count() for v in iter_bits(s.mask)) // 2


def cut_edges(graph: Graph, partition: Partition) -> CutSummary:
    """
    Edges whose endpoints lie in different blocks.

    Returns:
        CutSummary with the total and the symmetric matrix C(V_i, V_j)

    Raises:
        InputError: If the partition is over a different vertex count
    """
    if partition.n != graph.n:
        raise InputError(f"partition is over {partition.n} vertices, graph has {graph.n}")

    r = partition.r
    pairwise: List[List[int]] = [[0] * r for _ in range(r)]
    for i, block_i in enumerate(partition.blocks):
        for j in range(i + 1, r):
            mask_j = partition.blocks[j].mask
            count = sum((graph.adjacency[v] & mask_j).bit_count() for v in iter_bits(block_i.mask))
            pairwise[i][j] = pairwise[j][i] = count

    total = sum(pairwise[i][j] for i in range(r) for j in range(i + 1, r))
    return CutSummary(total=total, pairwise=pairwise)


def canonical_k(graph: Graph, k: int) -> int:
    """
    Parity rewrite of k under which every alliance predicate is unchanged.

    All degrees even and k odd, or all degrees odd and k even: k + 1.
    Otherwise k.
    """
    if graph.n == 0:
        return k
    if graph.all_degrees_even and k % 2 != 0:
        return k + 1
    if graph.all_degrees_odd and k % 2 == 0:
        return k + 1
    return k
