"""
Thread count never changes values, witnesses, node counts or reports,
including when a node budget cuts a search short.
"""

import pytest

from app.services import solvers, verifier
from app.services.graph_builder import cartesian_product, generate


def product(first, second):
    return cartesian_product(generate(*first), generate(*second))


CASES = [
    (generate("petersen"), -1),
    (generate("petersen"), 1),
    (generate("hypercube", 3), 1),
    (product(("complete", 3), ("cycle", 4)), 0),
    (product(("cycle", 3), ("cycle", 3)), 0),
]


def snapshot(result):
    return result.model_dump(mode="json")


@pytest.mark.parametrize("graph, k", CASES)
@pytest.mark.parametrize("is_global", [False, True])
def test_alliance_and_partition_searches(graph, k, is_global):
    for solve in (solvers.alliance_number, solvers.partition_number):
        single = solve(graph, k, is_global=is_global, threads=1)
        pooled = solve(graph, k, is_global=is_global, threads=8)
        assert snapshot(single) == snapshot(pooled)


@pytest.mark.parametrize("graph, k", CASES)
def test_cut_and_bisection_searches(graph, k):
    assert snapshot(solvers.min_cut_partition(graph, k, 2, threads=1)) == \
        snapshot(solvers.min_cut_partition(graph, k, 2, threads=8))
    assert snapshot(solvers.alliance_bisection(graph, k, threads=1)) == \
        snapshot(solvers.alliance_bisection(graph, k, threads=8))


@pytest.mark.parametrize("graph", [generate("petersen"), product(("cycle", 3), ("cycle", 3))])
def test_graph_measures(graph):
    for solve in (solvers.domination_number, solvers.isoperimetric_number, solvers.bipartition_width):
        assert snapshot(solve(graph, threads=1)) == snapshot(solve(graph, threads=8))


# ========== Tight budgets ==========

@pytest.mark.parametrize("budget", range(140, 171))
def test_global_alliance_under_tight_budget(budget):
    graph = product(("complete", 3), ("cycle", 4))
    single = solvers.alliance_number(graph, 1, is_global=True, budget=budget, threads=1)
    pooled = solvers.alliance_number(graph, 1, is_global=True, budget=budget, threads=8)
    assert snapshot(single) == snapshot(pooled)


def test_tight_budget_sweep_crosses_exhaustion():
    graph = product(("complete", 3), ("cycle", 4))
    full = solvers.alliance_number(graph, 1, is_global=True, threads=1)
    assert full.exact
    short = solvers.alliance_number(graph, 1, is_global=True, budget=full.nodes_explored - 1, threads=8)
    assert not short.exact
    assert short.nodes_explored == full.nodes_explored
    enough = solvers.alliance_number(graph, 1, is_global=True, budget=full.nodes_explored, threads=8)
    assert snapshot(enough) == snapshot(full)


@pytest.mark.parametrize("budget", range(0, 200, 9))
def test_domination_under_tight_budget(budget):
    graph = generate("petersen")
    assert snapshot(solvers.domination_number(graph, budget=budget, threads=1)) == \
        snapshot(solvers.domination_number(graph, budget=budget, threads=8))


@pytest.mark.parametrize("budget", range(0, 660, 23))
def test_isoperimetric_number_under_tight_budget(budget):
    graph = generate("petersen")
    assert snapshot(solvers.isoperimetric_number(graph, budget=budget, threads=1)) == \
        snapshot(solvers.isoperimetric_number(graph, budget=budget, threads=8))


@pytest.mark.parametrize("budget", range(0, 140, 5))
def test_bipartition_width_under_tight_budget(budget):
    graph = product(("cycle", 3), ("cycle", 3))
    assert snapshot(solvers.bipartition_width(graph, budget=budget, threads=1)) == \
        snapshot(solvers.bipartition_width(graph, budget=budget, threads=8))


@pytest.mark.parametrize("budget", range(0, 140, 7))
def test_bisection_under_tight_budget(budget):
    graph = product(("cycle", 3), ("cycle", 3))
    assert snapshot(solvers.alliance_bisection(graph, 0, budget=budget, threads=1)) == \
        snapshot(solvers.alliance_bisection(graph, 0, budget=budget, threads=8))


# ========== Corpus reports ==========

SMALL = ("K2", "K4", "C5", "P4", "K1,3")


def small_corpus():
    return [e for e in verifier.builtin_corpus() if e.name in SMALL]


def test_small_corpus_report():
    single = verifier.verify_corpus(small_corpus(), threads=1)
    pooled = verifier.verify_corpus(small_corpus(), threads=4)
    assert single.model_dump(mode="json") == pooled.model_dump(mode="json")


def test_small_corpus_report_under_tight_budget():
    single = verifier.verify_corpus(small_corpus(), budget=6, threads=1)
    pooled = verifier.verify_corpus(small_corpus(), budget=6, threads=8)
    assert single.model_dump(mode="json") == pooled.model_dump(mode="json")


def test_corpus_threads_reach_the_solvers(monkeypatch):
    seen = []
    original = solvers.domination_number

    def recording(graph, budget=None, threads=None):
        seen.append(threads)
        return original(graph, budget=budget, threads=threads)

    monkeypatch.setattr(solvers, "domination_number", recording)
    verifier.verify_corpus(small_corpus(), threads=3)
    assert seen and set(seen) == {3}


@pytest.mark.slow
def test_full_corpus_report():
    assert verifier.verify_corpus(threads=1).model_dump(mode="json") == \
        verifier.verify_corpus(threads=8).model_dump(mode="json")
