"""
Alliance predicates, cut counting and the parity rewrite.
"""

import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from app.models.graph import Partition, VertexSet
from app.services import alliances
from app.services.graph_builder import cartesian_product, generate
from app.utils.exceptions import InputError
from tests.oracles import small_graphs


def test_degree_in(petersen):
    c4, k4 = generate("cycle", 4), generate("complete", 4)
    assert alliances.degree_in(c4, 0, VertexSet.of(4, [0, 1])) == 1
    assert alliances.degree_in(k4, 0, VertexSet.of(4, [1, 2, 3])) == 3
    assert all(alliances.degree_in(petersen, v, VertexSet.full(10)) == 3 for v in petersen.vertices)


def test_degree_in_rejects_unknown_vertex():
    with pytest.raises(InputError):
        alliances.degree_in(generate("cycle", 4), 4, VertexSet.full(4))


def test_adjacent_pair_in_cubic_graph_is_minus_one_alliance(petersen):
    for u, v in petersen.edges:
        assert alliances.is_defensive_alliance(petersen, VertexSet.of(10, [u, v]), -1)


def test_star_has_no_two_alliance():
    star = generate("star", 4)
    for mask in range(1, 1 << star.n):
        assert not alliances.is_defensive_alliance(star, VertexSet(star.n, mask), 2)


@pytest.mark.parametrize("kind, params", [("petersen", ()), ("star", (4,)), ("path", (5,)), ("complete", (5,))])
def test_singletons_are_minus_max_degree_alliances(kind, params):
    graph = generate(kind, *params)
    for v in graph.vertices:
        assert alliances.is_defensive_alliance(graph, VertexSet.of(graph.n, [v]), -graph.max_degree)


def test_empty_candidate_is_an_input_error():
    c4 = generate("cycle", 4)
    with pytest.raises(InputError):
        alliances.is_defensive_alliance(c4, VertexSet(4, 0), 0)
    with pytest.raises(InputError):
        alliances.is_dominating(c4, VertexSet(4, 0))


def test_set_over_another_order_is_rejected():
    with pytest.raises(InputError):
        alliances.is_defensive_alliance(generate("cycle", 4), VertexSet.full(5), 0)


def test_is_dominating(q3):
    c4 = generate("cycle", 4)
    assert alliances.is_dominating(q3, VertexSet.full(8))
    assert alliances.is_dominating(q3, VertexSet.of(8, [0, 7]))
    assert not alliances.is_dominating(c4, VertexSet.of(4, [0]))


def test_global_defensive_alliance(q3, petersen):
    face = VertexSet.of(8, [0, 1, 2, 3])
    assert alliances.is_global_defensive_alliance(q3, face, 1)
    assert not alliances.is_global_defensive_alliance(petersen, VertexSet.of(10, [0, 1]), -1)
    assert alliances.is_global_defensive_alliance(petersen, VertexSet.full(10), 3)
    assert not alliances.is_global_defensive_alliance(petersen, VertexSet.full(10), 4)


def test_cut_edges(c3c3):
    c4 = generate("cycle", 4)
    assert alliances.cut_edges(c4, Partition.trivial(4)).total == 0
    assert alliances.cut_edges(c4, Partition.of(4, [[0, 2], [1, 3]])).total == 4

    rows = Partition.of(9, [[0, 1, 2], [3, 4, 5], [6, 7, 8]])
    summary = alliances.cut_edges(c3c3, rows)
    assert summary.total == 9
    assert summary.pairwise == [[0, 3, 3], [3, 0, 3], [3, 3, 0]]


def test_cut_edges_rejects_foreign_partition():
    with pytest.raises(InputError):
        alliances.cut_edges(generate("cycle", 4), Partition.trivial(5))


@pytest.mark.parametrize("graph, k, expected", [
    (generate("cycle", 4), -1, 0),
    (generate("cycle", 4), 0, 0),
    (generate("petersen"), 0, 1),
    (generate("petersen"), -3, -3),
    (cartesian_product(generate("complete", 4), generate("cycle", 4)), 1, 1),
    (generate("path", 4), -1, -1),
])
def test_canonical_k(graph, k, expected):
    assert alliances.canonical_k(graph, k) == expected


def test_induced_and_boundary_sizes(q3):
    face = VertexSet.of(8, [0, 1, 2, 3])
    assert alliances.induced_size(q3, face) == 4
    assert alliances.boundary_size(q3, face) == 4


# ========== Properties ==========

@st.composite
def graph_and_set(draw):
    graph = draw(small_graphs(min_n=1, max_n=8))
    mask = draw(st.integers(1, graph.full_mask))
    return graph, VertexSet(graph.n, mask)


@hypothesis_settings(max_examples=200, deadline=None)
@given(graph_and_set())
def test_inside_and_outside_degrees_sum_to_degree(case):
    graph, s = case
    complement = s.complement()
    for v in graph.vertices:
        assert alliances.degree_in(graph, v, s) + alliances.degree_in(graph, v, complement) == graph.degrees[v]


@hypothesis_settings(max_examples=200, deadline=None)
@given(graph_and_set(), st.integers(-8, 8))
def test_both_forms_of_the_condition_agree(case, k):
    graph, s = case
    assert alliances.is_defensive_alliance(graph, s, k) == (alliances.alliance_strength(graph, s) >= k)
    if alliances.is_defensive_alliance(graph, s, k):
        assert alliances.is_defensive_alliance(graph, s, k - 1)


@hypothesis_settings(max_examples=200, deadline=None)
@given(graph_and_set(), st.integers(-8, 8))
def test_parity_rewrite_preserves_the_predicate(case, k):
    graph, s = case
    rewritten = alliances.canonical_k(graph, k)
    assert alliances.is_defensive_alliance(graph, s, k) == alliances.is_defensive_alliance(graph, s, rewritten)


@st.composite
def graph_and_partition(draw):
    graph = draw(small_graphs(min_n=1, max_n=8))
    owners = []
    for _ in graph.vertices:
        owners.append(draw(st.integers(0, max(owners, default=-1) + 1)))
    blocks = [[v for v, owner in enumerate(owners) if owner == b] for b in range(max(owners) + 1)]
    return graph, Partition.of(graph.n, blocks)


@hypothesis_settings(max_examples=200, deadline=None)
@given(graph_and_partition())
def test_cut_edges_are_the_edges_left_outside_blocks(case):
    graph, partition = case
    summary = alliances.cut_edges(graph, partition)
    inside = sum(alliances.induced_size(graph, block) for block in partition.blocks)
    assert summary.total == graph.m - inside

    r = partition.r
    matrix = summary.pairwise
    assert all(matrix[i][i] == 0 for i in range(r))
    assert all(matrix[i][j] == matrix[j][i] for i in range(r) for j in range(r))
    assert sum(matrix[i][j] for i in range(r) for j in range(i + 1, r)) == summary.total
