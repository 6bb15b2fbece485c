"""
Graph model, generators, Cartesian products and the edge-list format.
"""

import networkx as nx
import pytest
from hypothesis import given, settings as hypothesis_settings

from app.models.graph import Graph, Partition, VertexSet
from app.services.graph_builder import (
    build_graph,
    cartesian_product,
    family_h,
    family_h_blocks,
    generate,
    product_vertex,
    to_networkx,
)
from app.utils.exceptions import GraphParseError, InputError
from app.utils.graph_io import format_graph, parse_graph_file, parse_graph_text, write_graph_file
from tests.oracles import small_graphs


# ========== Graph ==========

def test_build_graph_normalizes_orientation():
    graph = build_graph(3, [(1, 0), (2, 1)])
    assert graph.edges == ((0, 1), (1, 2))
    assert graph.degrees == (1, 2, 1)
    assert graph.has_edge(1, 0)
    assert not graph.has_edge(0, 2)


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(0, 1), (1, 0)]])
def test_build_graph_rejects_bad_edges(edges):
    with pytest.raises(InputError):
        build_graph(3, edges)


def test_empty_graph_has_zero_degrees():
    graph = build_graph(0, [])
    assert graph.min_degree == 0 and graph.max_degree == 0
    assert graph.full_mask == 0


def test_vertex_set_rejects_foreign_vertices():
    with pytest.raises(InputError):
        VertexSet.of(4, [0, 4])
    with pytest.raises(InputError):
        VertexSet(3, 0b1000)


def test_partition_is_canonical():
    a = Partition.of(4, [[2, 3], [0, 1]])
    b = Partition.of(4, [[0, 1], [3, 2]])
    assert a == b
    assert a.to_lists() == [[0, 1], [2, 3]]
    assert a.block_index() == (0, 0, 1, 1)


@pytest.mark.parametrize("blocks", [[[0, 1], [1, 2, 3]], [[0, 1], [2]], [[0, 1, 2, 3], []]])
def test_partition_rejects_invalid_blocks(blocks):
    with pytest.raises(InputError):
        Partition.of(4, blocks)


# ========== Generators ==========

@pytest.mark.parametrize("kind, params, n, m", [
    ("complete", (4,), 4, 6),
    ("cycle", (5,), 5, 5),
    ("path", (4,), 4, 3),
    ("star", (4,), 5, 4),
    ("hypercube", (3,), 8, 12),
    ("petersen", (), 10, 15),
    ("family-h", (3, 0), 9, 18),
    ("family_h", (4, -1), 12, 30),
])
def test_generators(kind, params, n, m):
    graph = generate(kind, *params)
    assert (graph.n, graph.m) == (n, m)


def test_generate_rejects_bad_input():
    with pytest.raises(InputError):
        generate("wheel", 5)
    with pytest.raises(InputError):
        generate("cycle", 2)
    with pytest.raises(InputError):
        generate("cycle")
    with pytest.raises(InputError):
        generate("family-h", 1, 0)
    with pytest.raises(InputError):
        generate("random", 5, 1.5, 0)


@pytest.mark.parametrize("kind, params", [
    ("cycle", (4.5,)),
    ("complete", (3.2,)),
    ("family-h", (3, 0.5)),
    ("family-h", (2.7, 0)),
    ("random", (5.5, 0.5, 0)),
    ("random", (5, 0.5, 1.25)),
    ("hypercube", (float("nan"),)),
])
def test_generate_rejects_fractional_integer_parameters(kind, params):
    with pytest.raises(InputError, match="integer"):
        generate(kind, *params)


def test_generate_accepts_integral_floats():
    assert generate("cycle", 4.0) == generate("cycle", 4)
    assert generate("family-h", 3.0, -1.0) == generate("family-h", 3, -1)


def test_random_generator_is_seeded():
    assert generate("random", 7, 0.5, 3) == generate("random", 7, 0.5, 3)


# ========== Products ==========

def test_cartesian_product_numbering(c3c3):
    assert (c3c3.n, c3c3.m) == (9, 18)
    assert c3c3.is_regular and c3c3.min_degree == 4
    # (0,1) ~ (0,2) within a row, (0,1) ~ (2,1) within a column
    assert c3c3.has_edge(product_vertex(0, 1, 3), product_vertex(0, 2, 3))
    assert c3c3.has_edge(product_vertex(0, 1, 3), product_vertex(2, 1, 3))
    assert not c3c3.has_edge(product_vertex(0, 0, 3), product_vertex(1, 1, 3))
    assert c3c3.label(5) == "(1,2)"


def test_product_of_two_edges_is_a_four_cycle():
    k2 = generate("complete", 2)
    square = cartesian_product(k2, k2)
    assert square.n == 4 and square.m == 4 and square.degrees == (2, 2, 2, 2)


def test_product_sizes(q3, petersen):
    product = cartesian_product(petersen, q3)
    assert product.n == 80
    assert product.m == petersen.m * q3.n + q3.m * petersen.n
    assert product.min_degree == 6


def test_product_rejects_empty_factor():
    with pytest.raises(InputError):
        cartesian_product(build_graph(0, []), generate("complete", 2))


@hypothesis_settings(max_examples=60, deadline=None)
@given(small_graphs(min_n=1, max_n=5), small_graphs(min_n=1, max_n=5))
def test_product_factors_commute_up_to_isomorphism(g1, g2):
    forward, backward = cartesian_product(g1, g2), cartesian_product(g2, g1)
    assert (forward.n, forward.m) == (backward.n, backward.m)
    assert nx.is_isomorphic(to_networkx(forward), to_networkx(backward))


@hypothesis_settings(max_examples=60, deadline=None)
@given(small_graphs(min_n=1, max_n=5), small_graphs(min_n=1, max_n=5))
def test_product_degrees_add(g1, g2):
    product = cartesian_product(g1, g2)
    for u in g1.vertices:
        for v in g2.vertices:
            assert product.degrees[product_vertex(u, v, g2.n)] == g1.degrees[u] + g2.degrees[v]


def test_family_h_blocks_are_cliques():
    graph = family_h(3, 1)
    partition = family_h_blocks(3, 1)
    assert partition.r == 3 and set(partition.sizes) == {4}
    for block in partition.blocks:
        members = block.to_list()
        assert all(graph.has_edge(u, v) for i, u in enumerate(members) for v in members[i + 1:])


# ========== Edge-list format ==========

def test_parse_k2():
    graph = parse_graph_text("2 1\n0 1\n")
    assert graph == build_graph(2, [(0, 1)])


def test_parse_skips_comments_and_blank_lines():
    graph = parse_graph_text("# triangle\n\n3 3\n0 1\n# middle\n1 2\n2 0\n")
    assert graph.m == 3 and graph.edges == ((0, 1), (0, 2), (1, 2))


def test_parse_reports_duplicate_at_second_occurrence():
    with pytest.raises(GraphParseError) as info:
        parse_graph_text("3 2\n1 2\n2 1\n")
    assert info.value.line == 3
    assert "line 3" in str(info.value)


@pytest.mark.parametrize("text, line", [
    ("2 1\n0 x\n", 2),
    ("2 1\n0 1 2\n", 2),
    ("2 1\n0 2\n", 2),
    ("3 1\n1 1\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphParseError) as info:
        parse_graph_text(text)
    assert info.value.line == line


def test_parse_rejects_header_mismatch():
    with pytest.raises(GraphParseError, match="declares 2 edges"):
        parse_graph_text("3 2\n0 1\n")
    with pytest.raises(GraphParseError, match="header"):
        parse_graph_text("# nothing\n")


def test_parse_missing_file(tmp_path):
    with pytest.raises(GraphParseError, match="does not exist"):
        parse_graph_file(tmp_path / "absent.txt")


def test_shipped_petersen_file(corpus_dir, petersen):
    graph = parse_graph_file(corpus_dir / "petersen.txt")
    assert (graph.n, graph.m) == (10, 15)
    assert graph.edges == petersen.edges


@pytest.mark.parametrize("name, expected", [
    ("c3c3.txt", lambda: cartesian_product(generate("cycle", 3), generate("cycle", 3))),
    ("q3.txt", lambda: generate("hypercube", 3)),
    ("family_h_3_0.txt", lambda: family_h(3, 0)),
])
def test_shipped_files_match_generators(corpus_dir, name, expected):
    assert parse_graph_file(corpus_dir / name).edges == expected().edges


@pytest.mark.parametrize("graph", [
    generate("petersen"),
    generate("random", 8, 0.4, 11),
    cartesian_product(generate("star", 4), generate("complete", 2)),
    build_graph(3, []),
], ids=["petersen", "random", "labelled-product", "edgeless"])
def test_write_then_parse_is_identity(tmp_path, graph):
    path = write_graph_file(graph, tmp_path / "graph.txt")
    assert parse_graph_file(path) == graph
    assert format_graph(parse_graph_file(path)) == format_graph(graph)


def test_labels_must_cover_every_vertex():
    with pytest.raises(GraphParseError, match="label"):
        parse_graph_text("2 1\n#label 0 a\n0 1\n")


def test_graph_equality_ignores_derived_fields():
    assert Graph(2, ((0, 1),)) == build_graph(2, [(1, 0)])


def test_repeated_label_is_rejected_at_its_line():
    with pytest.raises(GraphParseError, match="already labelled on line 2") as info:
        parse_graph_text("2 1\n#label 0 a\n#label 0 b\n#label 1 c\n0 1\n")
    assert info.value.line == 3


def test_label_text_is_kept_verbatim():
    graph = parse_graph_text("2 1\n#label 0  padded \n#label 1 x y\n0 1\n")
    assert graph.labels == (" padded ", "x y")
    assert parse_graph_text(format_graph(graph)) == graph
