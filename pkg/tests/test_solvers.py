"""
Exact solvers on graphs with known values.
"""

from fractions import Fraction

import pytest

from app.models.graph import VertexSet
from app.services import alliances, solvers
from app.services.graph_builder import build_graph, cartesian_product, family_h, generate
from app.utils.exceptions import InputError


def product(first, second):
    return cartesian_product(generate(*first), generate(*second))


K4C4 = (("complete", 4), ("cycle", 4))
K3C4 = (("complete", 3), ("cycle", 4))
K2C4 = (("complete", 2), ("cycle", 4))


# ========== Alliance numbers ==========

def test_adjacent_pair_is_minimum_minus_one_alliance_of_petersen(petersen):
    result = solvers.alliance_number(petersen, -1)
    assert result.value == 2 and result.exact
    assert result.witness.to_list() == [0, 1]


def test_book_graph_two_alliance():
    book = product(("star", 4), ("complete", 2))
    result = solvers.alliance_number(book, 2)
    assert result.value == 8
    assert alliances.is_defensive_alliance(book, result.witness, 2)


def test_global_minus_one_alliance_of_prism(c4k2):
    result = solvers.alliance_number(c4k2, -1, is_global=True)
    assert result.value == 4
    assert alliances.is_global_defensive_alliance(c4k2, result.witness, -1)


def test_alliance_absent_above_max_degree():
    star = generate("star", 4)
    assert solvers.alliance_number(star, 2).value is None
    assert solvers.alliance_number(generate("cycle", 5), 3).value is None


def test_whole_vertex_set_is_the_only_delta_alliance(petersen):
    result = solvers.alliance_number(petersen, 3, is_global=True)
    assert result.value == 10


def test_alliance_number_needs_a_vertex():
    with pytest.raises(InputError):
        solvers.alliance_number(build_graph(0, []), 0)


def test_budget_exhaustion_falls_back_to_the_vertex_set(petersen):
    result = solvers.alliance_number(petersen, 1, budget=3)
    assert not result.exact
    assert result.value == 10
    assert result.witness == VertexSet.full(10)
    assert solvers.alliance_number(petersen, 1).value == 5


# ========== Family H ==========

@pytest.mark.parametrize("r, k", [(3, -1), (3, 0), (3, 1), (4, -1)])
def test_family_h_values(r, k):
    graph = family_h(r, k)
    assert solvers.alliance_number(graph, k).value == r + k
    assert solvers.alliance_number(graph, k, is_global=True).value == r + k
    assert solvers.partition_number(graph, k).value == r
    assert solvers.partition_number(graph, k, is_global=True).value == r


def test_family_h_global_alliance_example():
    assert solvers.alliance_number(family_h(4, -1), -1, is_global=True).value == 3


# ========== Partition numbers ==========

@pytest.mark.parametrize("factors, k, is_global, expected", [
    (K3C4, 0, False, 4),
    (K2C4, -1, False, 4),
    (K2C4, 1, False, 2),
    (K3C4, 0, True, 3),
    (K2C4, 1, True, 2),
])
def test_partition_numbers_of_products(factors, k, is_global, expected):
    graph = product(*factors)
    result = solvers.partition_number(graph, k, is_global=is_global)
    assert result.value == expected and result.exact
    assert result.witness.r == expected
    check = alliances.is_global_defensive_alliance if is_global else alliances.is_defensive_alliance
    assert all(check(graph, block, k) for block in result.witness.blocks)


@pytest.mark.slow
@pytest.mark.parametrize("is_global, expected", [(False, 5), (True, 4)])
def test_partition_numbers_of_k4_c4(is_global, expected):
    result = solvers.partition_number(product(*K4C4), -1, is_global=is_global)
    assert result.value == expected and result.exact


def test_petersen_global_one_partition(petersen):
    result = solvers.partition_number(petersen, 1, is_global=True)
    assert result.value == 2


@pytest.mark.parametrize("kind, params", [("petersen", ()), ("cycle", (6,)), ("star", (3,)), ("hypercube", (3,))])
def test_minus_max_degree_partition_is_into_singletons(kind, params):
    graph = generate(kind, *params)
    result = solvers.partition_number(graph, -graph.max_degree)
    assert result.value == graph.n


def test_partition_number_absent_above_min_degree(petersen):
    assert solvers.partition_number(petersen, 4).value is None
    assert solvers.partition_number(petersen, 3).value == 1


def test_partition_budget_exhaustion_is_inexact():
    result = solvers.partition_number(product(*K3C4), 0, budget=5)
    assert not result.exact
    assert 1 <= result.value <= 4


def test_sum_identity_on_prism(c4k2):
    gamma = solvers.alliance_number(c4k2, -1, is_global=True)
    psi_gd = solvers.partition_number(c4k2, -1, is_global=True)
    assert (gamma.value, psi_gd.value) == (4, 2)
    assert gamma.value + psi_gd.value == (c4k2.n + 4) / 2


# ========== Cuts ==========

def test_min_cut_of_c3_c3(c3c3):
    result = solvers.min_cut_partition(c3c3, 0, 3)
    assert result.value == 9 and result.exact
    assert alliances.cut_edges(c3c3, result.witness).total == 9
    assert result.witness.r == 3


def test_min_cut_absent(c3c3):
    result = solvers.min_cut_partition(c3c3, 2, 2)
    assert result.value is None and result.exact


def test_min_cut_needs_two_blocks(c3c3):
    with pytest.raises(InputError):
        solvers.min_cut_partition(c3c3, 0, 1)


# ========== Domination, isoperimetry, bisection width ==========

@pytest.mark.parametrize("graph, expected", [
    (generate("complete", 5), 1),
    (generate("hypercube", 3), 2),
    (generate("cycle", 5), 2),
    (generate("petersen"), 3),
])
def test_domination_number(graph, expected):
    result = solvers.domination_number(graph)
    assert result.value == expected
    assert alliances.is_dominating(graph, result.witness)


@pytest.mark.parametrize("graph, expected", [
    (cartesian_product(generate("cycle", 3), generate("cycle", 3)), Fraction(2)),
    (cartesian_product(generate("cycle", 4), generate("complete", 2)), Fraction(1)),
    (generate("complete", 2), Fraction(1)),
    (generate("path", 4), Fraction(1, 2)),
    (build_graph(4, [(0, 1), (2, 3)]), Fraction(0)),
])
def test_isoperimetric_number(graph, expected):
    result = solvers.isoperimetric_number(graph)
    assert result.value == expected
    assert 2 * len(result.witness) <= graph.n
    assert Fraction(alliances.boundary_size(graph, result.witness), len(result.witness)) == expected


def test_isoperimetric_number_needs_two_vertices():
    with pytest.raises(InputError):
        solvers.isoperimetric_number(generate("complete", 1))


@pytest.mark.parametrize("graph, expected", [
    (generate("complete", 2), 1),
    (generate("cycle", 4), 2),
    (generate("hypercube", 3), 4),
    (cartesian_product(generate("cycle", 3), generate("cycle", 3)), 8),
])
def test_bipartition_width(graph, expected):
    result = solvers.bipartition_width(graph)
    assert result.value == expected
    assert len(result.witness) == graph.n // 2


@pytest.mark.parametrize("solve", [solvers.isoperimetric_number, solvers.bipartition_width])
def test_zero_budget_measure_has_no_witness(c3c3, solve):
    result = solve(c3c3, budget=0)
    assert result.value is None and result.witness is None
    assert not result.exact
    assert result.nodes_explored == 1
    assert result.model_dump(mode="json")["witness"] is None


def test_budget_cut_isoperimetric_number_is_an_upper_bound(petersen):
    exact = solvers.isoperimetric_number(petersen)
    cut = solvers.isoperimetric_number(petersen, budget=50)
    assert not cut.exact
    assert cut.value >= exact.value
    assert Fraction(alliances.boundary_size(petersen, cut.witness), len(cut.witness)) == cut.value


# ========== Bisections ==========

def test_cube_bisects_into_two_squares(q3):
    result = solvers.alliance_bisection(q3, 1)
    assert result.value == 4
    assert result.witness.to_lists() == [[0, 1, 2, 3], [4, 5, 6, 7]]
    for side in result.witness.blocks:
        assert alliances.induced_size(q3, side) == 4
        assert all(alliances.degree_in(q3, v, side) == 2 for v in side)


def test_c3_c3_has_no_one_bisection(c3c3):
    result = solvers.alliance_bisection(c3c3, 1)
    assert result.value is None and result.exact


def test_edge_bisects_into_endpoints():
    result = solvers.alliance_bisection(generate("complete", 2), -1)
    assert result.witness.to_lists() == [[0], [1]]
    assert result.value == 1


def test_odd_bisection_is_balanced():
    result = solvers.alliance_bisection(generate("complete", 5), -2)
    assert sorted(result.witness.sizes) == [2, 3]
