"""
Theorem harness: family H recognition, per-graph verdicts, witness mode and
the weakened-condition mutation.
"""

import pytest

from app.services import alliances, verifier
from app.services.graph_builder import cartesian_product, family_h, generate
from app.utils.exceptions import InputError


# ========== Family H ==========

@pytest.mark.parametrize("r, k", [(2, 0), (3, -1), (3, 0), (3, 1), (4, -1)])
def test_generated_members_are_recognized(r, k):
    graph = family_h(r, k)
    assert verifier.recognize_family_h(graph, r, k)
    partition = verifier.find_family_h_partition(graph, r, k)
    assert partition.r == r and set(partition.sizes) == {r + k}


def test_c3_c3_is_the_member_for_three_blocks(c3c3):
    # C3 is K3, so C3 x C3 is K3 x K3, the member with r = 3 and k = 0. It is not
    # a member for k = 1, whose graph K4 x K3 is the usual example of H.
    assert verifier.recognize_family_h(c3c3, 3, 0)
    assert not verifier.recognize_family_h(c3c3, 3, 1)


def test_k4_k2_is_recognized_without_generator_labels():
    graph = cartesian_product(generate("complete", 4), generate("complete", 2))
    assert verifier.recognize_family_h(graph, 2, 2)


@pytest.mark.parametrize("graph, r, k", [
    (cartesian_product(generate("complete", 4), generate("cycle", 4)), 4, 0),
    (generate("petersen"), 2, 3),
    (generate("hypercube", 3), 2, 2),
    (generate("hypercube", 3), 2, 1),
    (generate("cycle", 4), 1, 3),
])
def test_non_members_are_rejected(graph, r, k):
    assert not verifier.recognize_family_h(graph, r, k)


# ========== Per-graph verification ==========

@pytest.mark.parametrize("kind, params", [
    ("cycle", (5,)),
    ("path", (4,)),
    ("star", (4,)),
    ("hypercube", (3,)),
    ("petersen", ()),
    ("random", (7, 0.5, 7)),
])
def test_small_graphs_have_no_violations(kind, params):
    graph = generate(kind, *params)
    result = verifier.verify_graph(graph, name=kind)
    assert result.violations == []
    assert any(v.verdict == "holds" for v in result.verdicts)


def test_c3_c3_verdicts(c3c3):
    c3 = generate("cycle", 3)
    result = verifier.verify_graph(c3c3, name="C3xC3", factors=(c3, c3), family_h_params=(3, 0))
    assert result.violations == []
    assert result.family_h is True

    def verdicts(theorem, k=None):
        return [v for v in result.verdicts if v.theorem == theorem and (k is None or v.k == k)]

    assert all(v.tight for v in verdicts("psi_gd_mu", 0))
    assert all(v.tight for v in verdicts("a_mu_lower", 0))
    assert [v.verdict for v in verdicts("nobisection", 1)] == ["holds"]
    assert any(v.verdict == "holds" and v.r == 3 for v in verdicts("family_h_equality", 0))
    assert all(v.verdict == "holds" for v in verdicts("iso_mu_lower"))


def test_prism_sum_identity_is_tight(c4k2):
    result = verifier.verify_graph(c4k2, k_range=(-1, -1))
    (identity,) = [v for v in result.verdicts if v.theorem == "gamma_plus_psi"]
    assert identity.verdict == "holds" and identity.tight
    assert identity.lhs == 6


def test_small_budget_skips_instead_of_violating(petersen):
    result = verifier.verify_graph(petersen, budget=20)
    assert result.violations == []
    assert any(v.verdict == "skipped" for v in result.verdicts)


def test_zero_budget_skips_the_measure_audits():
    result = verifier.verify_graph(generate("cycle", 4), budget=0)
    assert result.violations == []
    audits = {v.theorem: v for v in result.verdicts if v.theorem in ("witness_audit_iso", "witness_audit_bw")}
    assert set(audits) == {"witness_audit_iso", "witness_audit_bw"}
    assert all(v.verdict == "skipped" for v in audits.values())


def test_weakened_condition_is_caught(monkeypatch, q3):
    original = alliances.required_inside
    monkeypatch.setattr(alliances, "required_inside", lambda degree, k: original(degree, k) - 1)
    result = verifier.verify_graph(q3, k_range=(3, 3))
    assert result.violations
    assert any(v.theorem.startswith("witness_audit") for v in result.violations)


def test_empty_k_range_is_rejected(q3):
    with pytest.raises(InputError):
        verifier.verify_graph(q3, k_range=(2, 1))


# ========== Products and claims ==========

def test_product_theorems_on_a_small_product():
    k2, c3 = generate("complete", 2), generate("cycle", 3)
    result = verifier.verify_graph(cartesian_product(k2, c3), name="K2xC3", factors=(k2, c3))
    assert result.violations == []
    theorems = {v.theorem for v in result.verdicts}
    assert {"product_alliance", "product_partition", "global_product_left",
            "product_partition_bound", "shifted_alliance_bound"} <= theorems


@pytest.mark.slow
def test_petersen_cube_witness_mode(petersen, q3):
    entry = next(e for e in verifier.builtin_corpus() if e.name == "PxQ3")
    result = verifier.verify_entry(entry)
    assert result.witness_mode
    assert result.violations == []
    certified = {(c.quantity, c.k): c.certified for c in result.claims}
    assert certified == {
        ("a", -2): "a_-2 <= 4",
        ("psi", -2): "psi_-2 >= 20",
        ("a", 2): "a_2 <= 16",
        ("psi", 2): "psi_2 >= 5",
    }
    assert all(c.status == "one-sided certified" for c in result.claims)


# ========== Corpus ==========

def test_builtin_corpus_contents():
    corpus = verifier.builtin_corpus()
    names = [entry.name for entry in corpus]
    assert len(names) == len(set(names))
    assert {"Petersen", "Q3", "K4xC4", "C3xC3", "H(3,0)", "PxQ3"} <= set(names)
    assert all(entry.factors is not None for entry in corpus if entry.witness_mode)


def test_small_corpus_progress_and_totals():
    corpus = [e for e in verifier.builtin_corpus() if e.name in ("K2", "C4", "P4")]
    seen = []
    report = verifier.verify_corpus(corpus, progress=lambda done, total, v: seen.append((done, total, v.graph)))
    assert report.ok
    assert seen == [(1, 3, "K2"), (2, 3, "C4"), (3, 3, "P4")]
    assert report.total_verdicts == report.held + report.skipped


@pytest.mark.slow
def test_full_corpus_has_no_violations():
    report = verifier.verify_corpus()
    assert report.violated == []
    assert report.ok
