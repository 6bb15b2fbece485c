"""
Theorem harness.

For every corpus graph and protection level k the harness solves the exact
quantities it can reach within the node budget, evaluates the closed-form
bounds and asserts each inequality. Conditional bounds are asserted only
when their hypothesis is discharged by an explicit witness from a solver.

A comparison between two quantities is decided from what is actually known
about each side: an exact value, a certified upper bound (the witness of an
inexact minimization) or a certified lower bound (the witness of an inexact
maximization). Undecidable comparisons are reported as skipped, never as
violated.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from app.config import settings
from app.models.graph import Graph, Partition, VertexSet, iter_bits, mask_of
from app.schemas.results import SolveResult
from app.schemas.verification import CorpusReport, GraphVerification, PublishedClaim, TheoremVerdict
from app.services import alliances, bounds, products, solvers, spectral
from app.services.graph_builder import cartesian_product, family_h, generate
from app.utils.exact import rounded_mu
from app.utils.exceptions import AllianceLabError, InputError

logger = logging.getLogger(__name__)


# ========== Family H recognition ==========

def find_family_h_partition(graph: Graph, r: int, k: int) -> Optional[Partition]:
    """
    Blocks V_1..V_r of size r + k, each inducing a complete graph, with every
    vertex adjacent to exactly one vertex of every other block.

    Blocks are built around the smallest unassigned vertex from cliques in its
    neighborhood, so the search is exact.

    Returns:
        The partition, or None when the graph is not in the family for (r, k)
    """
    q = r + k
    if r <= 1 or q <= 0 or graph.n != r * q:
        return None
    if any(d != (q - 1) + (r - 1) for d in graph.degrees):
        return None

    adjacency = graph.adjacency
    blocks: List[int] = []

    def compatible(block: int) -> bool:
        for u in iter_bits(block):
            if (adjacency[u] & block).bit_count() != q - 1:
                return False
            for other in blocks:
                if (adjacency[u] & other).bit_count() != 1:
                    return False
        return True

    def extend(unassigned: int) -> bool:
        if not unassigned:
            return True
        v = (unassigned & -unassigned).bit_length() - 1
        candidates = list(iter_bits(adjacency[v] & unassigned))
        for rest in combinations(candidates, q - 1):
            block = mask_of(rest) | 1 << v
            if not compatible(block):
                continue
            blocks.append(block)
            if extend(unassigned & ~block):
                return True
            blocks.pop()
        return False

    if not extend(graph.full_mask):
        return None
    return Partition.from_masks(graph.n, blocks)


def recognize_family_h(graph: Graph, r: int, k: int) -> bool:
    """True iff the graph belongs to the family H for block count r and level k."""
    return find_family_h_partition(graph, r, k) is not None


# ========== Corpus ==========

@dataclass(frozen=True)
class CorpusEntry:
    """
    One graph of the verification corpus.

    Attributes:
        name: Report name
        graph: The graph
        factors: (G1, G2) when graph is G1 □ G2 built by cartesian_product
        witness_mode: Only product constructions are checked (no exact solving)
        k_range: Inclusive k interval; defaults to -Delta..delta
        family_h: (r, k) when graph was generated as a member of the family H
        claims: Published values out of exact reach, as (quantity, k, value)
    """

    name: str
    graph: Graph
    factors: Optional[Tuple[Graph, Graph]] = None
    witness_mode: bool = False
    k_range: Optional[Tuple[int, int]] = None
    family_h: Optional[Tuple[int, int]] = None
    claims: Tuple[Tuple[str, int, int], ...] = ()


FAMILY_H_PARAMETERS = ((2, 0), (3, -1), (3, 0), (3, 1), (4, -1))


def builtin_corpus() -> List[CorpusEntry]:
    """The built-in verification corpus."""
    k2, k3, k4 = (generate("complete", n) for n in (2, 3, 4))
    c3, c4 = generate("cycle", 3), generate("cycle", 4)
    petersen, q3 = generate("petersen"), generate("hypercube", 3)
    star4 = generate("star", 4)

    entries = [
        CorpusEntry("K2", k2),
        CorpusEntry("K4", k4),
        CorpusEntry("K5", generate("complete", 5)),
        CorpusEntry("C4", c4),
        CorpusEntry("C5", generate("cycle", 5)),
        CorpusEntry("C6", generate("cycle", 6)),
        CorpusEntry("P4", generate("path", 4)),
        CorpusEntry("P5", generate("path", 5)),
        CorpusEntry("K1,3", generate("star", 3)),
        CorpusEntry("K1,4", star4),
        CorpusEntry("Q2", generate("hypercube", 2)),
        CorpusEntry("Q3", q3),
        CorpusEntry("Q4", generate("hypercube", 4)),
        CorpusEntry("Petersen", petersen),
        CorpusEntry("K4xC4", cartesian_product(k4, c4), factors=(k4, c4)),
        CorpusEntry("K3xC4", cartesian_product(k3, c4), factors=(k3, c4)),
        CorpusEntry("K2xC4", cartesian_product(k2, c4), factors=(k2, c4)),
        CorpusEntry("C3xC3", cartesian_product(c3, c3), factors=(c3, c3)),
        CorpusEntry("K1,4xK2", cartesian_product(star4, k2), factors=(star4, k2)),
    ]
    for r, k in FAMILY_H_PARAMETERS:
        clique, base = generate("complete", r + k), generate("complete", r)
        entries.append(CorpusEntry(
            f"H({r},{k})", family_h(r, k), factors=(clique, base), family_h=(r, k)
        ))
    entries.append(CorpusEntry("gnp(7,0.5)", generate("random", 7, 0.5, settings.SEED + 7)))
    entries.append(CorpusEntry(
        "PxQ3", cartesian_product(petersen, q3), factors=(petersen, q3), witness_mode=True,
        claims=(("a", -2, 4), ("psi", -2, 20), ("a", 2, 16), ("psi", 2, 5)),
    ))
    return entries


# ========== Verdict bookkeeping ==========

@dataclass(frozen=True)
class _Side:
    """
    What is known about one side of a comparison.

    known_below: the true value is >= value. known_above: the true value is <= value.
    """

    value: Any
    known_below: bool = True
    known_above: bool = True

    @property
    def exact(self) -> bool:
        return self.known_below and self.known_above


def _measured(result: SolveResult) -> Optional[_Side]:
    if result.value is None:
        return None
    if result.exact:
        return _Side(result.value)
    maximize = result.quantity in ("psi", "psi-gd")
    return _Side(result.value, known_below=maximize, known_above=not maximize)


def _combine(a: _Side, b: _Side, op: Callable) -> _Side:
    """Sum or product of two nonnegative sides."""
    return _Side(op(a.value, b.value), a.known_below and b.known_below, a.known_above and b.known_above)


class _Recorder:
    """Collects verdicts for one graph."""

    def __init__(self, graph_name: str):
        self.graph = graph_name
        self.verdicts: List[TheoremVerdict] = []

    def _add(self, **fields) -> None:
        verdict = TheoremVerdict(graph=self.graph, **fields)
        if verdict.verdict == "violated":
            logger.error("%s violated on %s (k=%s, r=%s): lhs=%s rhs=%s",
                         verdict.theorem, self.graph, verdict.k, verdict.r, verdict.lhs, verdict.rhs)
        self.verdicts.append(verdict)

    def compare(self, theorem: str, anchor: str, lhs: Optional[_Side], op: str, rhs: Optional[_Side],
                k: Optional[int] = None, r: Optional[int] = None, witness: Any = None) -> None:
        if lhs is None or rhs is None:
            self.skip(theorem, anchor, "a side has no value within the search budget", k=k, r=r,
                      hypothesis="witness-limited")
            return
        if op == "==":
            decided = lhs.exact and rhs.exact
            outcome = ("holds" if lhs.value == rhs.value else "violated") if decided else "skipped"
        else:
            small, large = (lhs, rhs) if op == "<=" else (rhs, lhs)
            if small.known_above and large.known_below and small.value <= large.value:
                outcome = "holds"
            elif small.known_below and large.known_above and small.value > large.value:
                outcome = "violated"
            else:
                outcome = "skipped"

        self._add(
            theorem=theorem, anchor=anchor, k=k, r=r, lhs=lhs.value, rhs=rhs.value,
            hypothesis="established" if lhs.exact and rhs.exact else "witness-limited",
            verdict=outcome,
            tight=outcome == "holds" and lhs.value == rhs.value,
            reason="search budget leaves the comparison undecided" if outcome == "skipped" else None,
            witness=witness,
        )

    def fact(self, theorem: str, anchor: str, ok: bool, lhs: Any = None, rhs: Any = None,
             k: Optional[int] = None, r: Optional[int] = None, witness: Any = None) -> None:
        self._add(theorem=theorem, anchor=anchor, k=k, r=r, lhs=lhs, rhs=rhs,
                  verdict="holds" if ok else "violated", witness=witness)

    def skip(self, theorem: str, anchor: str, reason: str, k: Optional[int] = None,
             r: Optional[int] = None, hypothesis: str = "not-established") -> None:
        self._add(theorem=theorem, anchor=anchor, k=k, r=r, hypothesis=hypothesis,
                  verdict="skipped", reason=reason)


def _const(value: Any) -> _Side:
    return _Side(value)


class _Quantities:
    """Exact quantities of one graph, solved on first use and cached."""

    def __init__(self, graph: Graph, budget: int, threads: int):
        self.graph = graph
        self.budget = budget
        self.threads = threads
        self._cache: Dict[Tuple, Any] = {}

    def _get(self, key: Tuple, compute: Callable[[], Any]) -> Any:
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def a(self, k: int) -> SolveResult:
        return self._get(("a", k), lambda: solvers.alliance_number(
            self.graph, k, budget=self.budget, threads=self.threads))

    def gamma(self, k: int) -> SolveResult:
        return self._get(("gamma", k), lambda: solvers.alliance_number(
            self.graph, k, is_global=True, budget=self.budget, threads=self.threads))

    def psi(self, k: int) -> SolveResult:
        return self._get(("psi", k), lambda: solvers.partition_number(
            self.graph, k, budget=self.budget, threads=self.threads))

    def psi_gd(self, k: int) -> SolveResult:
        return self._get(("psi-gd", k), lambda: solvers.partition_number(
            self.graph, k, is_global=True, budget=self.budget, threads=self.threads))

    def cut(self, k: int, r: int) -> SolveResult:
        return self._get(("cut", k, r), lambda: solvers.min_cut_partition(
            self.graph, k, r, budget=self.budget, threads=self.threads))

    def bisection(self, k: int) -> SolveResult:
        return self._get(("bisect", k), lambda: solvers.alliance_bisection(
            self.graph, k, budget=self.budget, threads=self.threads))

    def dom(self) -> SolveResult:
        return self._get(("dom",), lambda: solvers.domination_number(
            self.graph, budget=self.budget, threads=self.threads))

    def iso(self):
        return self._get(("iso",), lambda: solvers.isoperimetric_number(
            self.graph, budget=self.budget, threads=self.threads))

    def bw(self) -> SolveResult:
        return self._get(("bw",), lambda: solvers.bipartition_width(
            self.graph, budget=self.budget, threads=self.threads))

    def spectrum(self):
        return self._get(("mu",), lambda: spectral.algebraic_connectivity(self.graph))


# ========== Per-graph checks ==========

def _blocks_of(witness: Any) -> Sequence[VertexSet]:
    return witness.blocks if isinstance(witness, Partition) else (witness,)


def _audit(rec: _Recorder, graph: Graph, theorem: str, witness: Any, k: int,
           is_global: bool, expected_count: Optional[int] = None, r: Optional[int] = None) -> None:
    """Re-check a witness through alliance_strength(), which does not use the search threshold."""
    blocks = _blocks_of(witness)
    strength = min(alliances.alliance_strength(graph, block) for block in blocks)
    dominating = all(alliances.is_dominating(graph, block) for block in blocks) if is_global else True
    count = len(blocks) if isinstance(witness, Partition) else len(witness)
    ok = strength >= k and dominating and (expected_count is None or count == expected_count)
    rec.fact(theorem, "every witness block B has min(delta(v) - 2 delta_out(v)) >= k"
             + (" and dominates" if is_global else ""),
             ok, lhs=strength, rhs=k, k=k, r=r, witness=witness)


def _audit_result(rec: _Recorder, graph: Graph, result: SolveResult, k: int) -> None:
    if result.witness is not None:
        _audit(rec, graph, f"witness_audit_{result.quantity}", result.witness, k,
               result.is_global, expected_count=result.value if result.quantity != "cut" else None,
               r=result.r)


def _verify_graph_level(rec: _Recorder, graph: Graph, q: _Quantities) -> None:
    dom = q.dom()
    rec.fact("witness_audit_dom", "the witness dominates the graph",
             alliances.is_dominating(graph, dom.witness) and len(dom.witness) == dom.value,
             lhs=dom.value, witness=dom.witness)

    if graph.n < 2:
        return

    iso, bw, spec = q.iso(), q.bw(), q.spectrum()
    if iso.witness is None:
        rec.skip("witness_audit_iso", "i = |boundary(S)| / |S| with |S| <= n/2",
                 "search budget ran out before the first candidate set", hypothesis="witness-limited")
    else:
        boundary = alliances.boundary_size(graph, iso.witness)
        rec.fact("witness_audit_iso", "i = |boundary(S)| / |S| with |S| <= n/2",
                 Fraction(boundary, len(iso.witness)) == iso.value and 2 * len(iso.witness) <= graph.n,
                 lhs=iso.value, witness=iso.witness)
    if bw.witness is None:
        rec.skip("witness_audit_bw", "bw = |boundary(X)| with |X| = floor(n/2)",
                 "search budget ran out before the first candidate set", hypothesis="witness-limited")
    else:
        rec.fact("witness_audit_bw", "bw = |boundary(X)| with |X| = floor(n/2)",
                 alliances.boundary_size(graph, bw.witness) == bw.value and len(bw.witness) == graph.n // 2,
                 lhs=bw.value, witness=bw.witness)

    trace = sum(spec.eigenvalues)
    rec.fact("laplacian_trace", "sum of Laplacian eigenvalues = 2m",
             abs(trace - 2 * graph.m) <= graph.n * settings.GUARD_BAND, lhs=trace, rhs=2 * graph.m)

    mu_q = rounded_mu(spec.mu, settings.MU_DECIMALS)
    band = Fraction(repr(settings.GUARD_BAND))
    i_side = None if iso.value is None else _Side(iso.value, known_below=iso.exact, known_above=True)
    rec.compare("iso_mu_lower", "i >= mu/2", i_side, ">=", _const(mu_q / 2 - band))

    i_exact = iso.value if iso.exact else None
    report = bounds.bounds_spectral(graph.n, graph.m, graph.min_degree, graph.max_degree, 0, i_exact, spec.mu)
    entry = report.entry("bw_lower")
    if entry.marginal:
        rec.skip("bw_spectral_lower", entry.source, "mu lies within the guard band", hypothesis="established")
    else:
        rec.compare("bw_spectral_lower", entry.source, _measured(bw), ">=", _const(entry.value))


def _verify_k(rec: _Recorder, graph: Graph, q: _Quantities, k: int, k_high: int) -> None:
    n, m, delta, big_delta = graph.n, graph.m, graph.min_degree, graph.max_degree
    a, g, p, pg = q.a(k), q.gamma(k), q.psi(k), q.psi_gd(k)
    sa, sg, sp, spg = (_measured(x) for x in (a, g, p, pg))

    for result in (a, g, p, pg):
        _audit_result(rec, graph, result, k)

    # products with the partition number
    if sp is not None and sa is not None:
        rec.compare("a_psi_product", "a * psi <= n", _combine(sa, sp, lambda x, y: x * y), "<=", _const(n), k=k)
    else:
        rec.skip("a_psi_product", "a * psi <= n", "no partition into defensive k-alliances", k=k)
    if spg is not None and sg is not None:
        rec.compare("gamma_psi_gd_product", "gamma * psi_gd <= n",
                    _combine(sg, spg, lambda x, y: x * y), "<=", _const(n), k=k)
    else:
        rec.skip("gamma_psi_gd_product", "gamma * psi_gd <= n",
                 "no partition into global defensive k-alliances", k=k)

    defensive = bounds.bounds_defensive(n, m, delta, k, a.value if a.exact else None)
    entry = defensive.entry("a_lower")
    if sa is not None and entry.applicable:
        rec.compare("a_lower", entry.source, sa, ">=", _const(entry.value), k=k, witness=a.witness)
    for name in ("psi_upper", "psi_upper_from_a"):
        entry = defensive.entry(name)
        if sp is not None and entry.applicable:
            rec.compare(name, entry.source, sp, "<=", _const(entry.value), k=k, witness=p.witness)
        elif entry.applicable:
            rec.skip(name, entry.source, "no partition into defensive k-alliances", k=k)

    global_report = bounds.bounds_global(n, delta, big_delta, k, g.value if g.exact else None)
    entry = global_report.entry("gamma_lower")
    if sg is not None and entry.applicable:
        rec.compare("gamma_lower", entry.source, sg, ">=", _const(entry.value), k=k, witness=g.witness)
    for name in ("psi_gd_coarse", "psi_gd_sqrt", "psi_gd_degree", "psi_gd_from_gamma"):
        entry = global_report.entry(name)
        if spg is not None and entry.applicable:
            rec.compare(name, entry.source, spg, "<=", _const(entry.value), k=k, witness=pg.witness)
        elif entry.applicable:
            rec.skip(name, entry.source, "no partition into global defensive k-alliances", k=k)

    entry = global_report.entry("gamma_plus_psi")
    if entry.applicable and spg is not None and pg.value >= 2 and g.exact and g.value >= 2:
        rec.compare("gamma_plus_psi", entry.source, _combine(sg, spg, lambda x, y: x + y), "<=",
                    _const(entry.value), k=k)
    else:
        rec.skip("gamma_plus_psi", entry.source, "needs k >= 1-delta with psi_gd >= 2 and gamma >= 2 witnessed", k=k)

    if sg is not None:
        rec.compare("gamma_ge_a", "gamma >= a", sg, ">=", sa, k=k)
        rec.compare("gamma_ge_domination", "gamma >= gamma(G)", sg, ">=", _measured(q.dom()), k=k)

    _verify_parity(rec, graph, q, k)
    if k + 1 <= k_high:
        _verify_monotonicity(rec, q, k)
    if n >= 2:
        _verify_spectral(rec, graph, q, k)
    if spg is not None:
        for r in range(2, pg.value + 1):
            _verify_cut(rec, graph, q, k, r)


def _verify_parity(rec: _Recorder, graph: Graph, q: _Quantities, k: int) -> None:
    rewritten = alliances.canonical_k(graph, k)
    if rewritten == k:
        return
    anchor = "quantity at k equals quantity at k+1 when every degree has parity opposite to k"
    for name, getter in (("a", q.a), ("gamma", q.gamma), ("psi", q.psi), ("psi_gd", q.psi_gd)):
        x, y = getter(k), getter(rewritten)
        if x.exact and y.exact:
            rec.fact(f"parity_equivalence_{name}", anchor, x.value == y.value, lhs=x.value, rhs=y.value, k=k)
        else:
            rec.skip(f"parity_equivalence_{name}", anchor, "search budget exhausted",
                     k=k, hypothesis="witness-limited")


def _verify_monotonicity(rec: _Recorder, q: _Quantities, k: int) -> None:
    for name, getter, op in (("a", q.a, ">="), ("gamma", q.gamma, ">="),
                             ("psi", q.psi, "<="), ("psi_gd", q.psi_gd, "<=")):
        nxt, cur = _measured(getter(k + 1)), _measured(getter(k))
        if nxt is None:
            continue
        if cur is None and not getter(k).exact:
            rec.skip(f"monotone_{name}", f"{name} at k+1 exists only if {name} at k exists",
                     "search budget exhausted", k=k, hypothesis="witness-limited")
            continue
        if cur is None:
            rec.fact(f"monotone_{name}", f"{name} at k+1 exists only if {name} at k exists", False,
                     lhs=nxt.value, k=k)
            continue
        rec.compare(f"monotone_{name}", f"{name}(k+1) {op} {name}(k)", nxt, op, cur, k=k)


def _verify_spectral(rec: _Recorder, graph: Graph, q: _Quantities, k: int) -> None:
    n, m = graph.n, graph.m
    a, p, pg = q.a(k), q.psi(k), q.psi_gd(k)
    iso, spec = q.iso(), q.spectrum()
    if not iso.exact:
        rec.skip("isoperimetric_bounds", "bounds through i", "isoperimetric search budget exhausted",
                 k=k, hypothesis="witness-limited")
        return

    report = bounds.bounds_spectral(n, m, graph.min_degree, graph.max_degree, k, iso.value, spec.mu,
                                    a.value if a.exact else None)
    global_blocks = pg.value is not None and pg.value >= 2
    defensive_blocks = p.value is not None and p.value >= 2

    for name, holds_for, side, op in (
        ("psi_gd_iso", global_blocks, _measured(pg), "<="),
        ("a_iso_lower", defensive_blocks, _measured(a), ">="),
        ("psi_gd_mu", global_blocks, _measured(pg), "<="),
        ("a_mu_lower", defensive_blocks, _measured(a), ">="),
    ):
        entry = report.entry(name)
        if not holds_for:
            rec.skip(name, entry.source, f"needs {entry.hypothesis} witnessed", k=k)
        elif entry.marginal:
            rec.skip(name, entry.source, "mu lies within the guard band", k=k, hypothesis="established")
        else:
            rec.compare(name, entry.source, side, op, _const(entry.value), k=k)

    for name, blocks in (("mu_nonpartitionable", pg), ("mu_nonpartitionable_defensive", p)):
        entry = report.entry(name)
        if not entry.applicable or not entry.value:
            continue
        if entry.marginal:
            rec.skip(name, entry.source, "mu lies within the guard band", k=k, hypothesis="established")
            continue
        found = blocks.value is not None and blocks.value >= 2
        rec.fact(name, entry.source + ": at most one block", not found,
                 lhs=blocks.value, rhs=1, k=k, witness=blocks.witness if found else None)

    # partition into r >= 2 global alliances with every block of size <= n/2
    entry = report.entry("iso_upper_if_partitionable")
    candidates = []
    if global_blocks:
        candidates.append(pg.witness)
        candidates.extend(q.cut(k, r).witness for r in range(2, pg.value + 1))
    small = next((c for c in candidates if c is not None and 2 * max(c.sizes) <= n), None)
    if small is not None:
        rec.compare("iso_partition_upper", entry.source, _const(iso.value), "<=", _const(entry.value),
                    k=k, witness=small)
    else:
        rec.skip("iso_partition_upper", entry.source, "no witnessed partition with blocks of size <= n/2", k=k)

    bisection = q.bisection(k)
    if bisection.witness is not None:
        _audit(rec, graph, "witness_audit_bisect", bisection.witness, k, True, expected_count=2)
        sizes = sorted(bisection.witness.sizes)
        rec.fact("bisection_balance", "|X| = |Y| or |X| = |Y| + 1", sizes[1] - sizes[0] <= 1,
                 lhs=sizes[1], rhs=sizes[0], k=k)
        rec.compare("bisection_cut_upper", "cut of the bisection <= (2m-nk)/4", _const(bisection.value), "<=",
                    _const(Fraction(2 * m - n * k, 4)), k=k, witness=bisection.witness)

    entry = report.entry("nobisection")
    if entry.value:
        if entry.marginal:
            rec.skip("nobisection", entry.source, "mu lies within the guard band", k=k, hypothesis="established")
        elif bisection.witness is not None:
            rec.fact("nobisection", entry.source + ": no bisection into global alliances", False,
                     lhs=bisection.value, k=k, witness=bisection.witness)
        elif bisection.exact:
            rec.fact("nobisection", entry.source + ": no bisection into global alliances", True, k=k)
        else:
            rec.skip("nobisection", entry.source, "bisection search budget exhausted",
                     k=k, hypothesis="witness-limited")


def _verify_cut(rec: _Recorder, graph: Graph, q: _Quantities, k: int, r: int) -> None:
    n, m = graph.n, graph.m
    cut, g = q.cut(k, r), q.gamma(k)
    anchor = "blocks of a global partition can be merged, so every r <= psi_gd admits one"
    if cut.value is None:
        if cut.exact:
            rec.fact("cut_partition_exists", anchor, False, k=k, r=r)
        else:
            rec.skip("cut_partition_exists", anchor, "cut search budget exhausted", k=k, r=r,
                     hypothesis="witness-limited")
        return

    _audit_result(rec, graph, cut, k)
    rec.fact("cut_witness_count", "C equals the cross-block edge count of the witness",
             alliances.cut_edges(graph, cut.witness).total == cut.value and cut.witness.r == r,
             lhs=cut.value, k=k, r=r, witness=cut.witness)

    side = _measured(cut)
    report = bounds.bounds_cut(n, m, graph.min_degree, k, r, g.value if g.exact else None)

    entry = report.entry("cut_lower_1")
    if entry.applicable:
        rec.compare("cut_lower_gamma", entry.source, side, ">=", _const(entry.value), k=k, r=r)
    entry = report.entry("cut_lower_2")
    rec.compare("cut_lower_r", entry.source, side, ">=", _const(entry.value), k=k, r=r)
    upper = report.entry("cut_upper")
    rec.compare("cut_upper", upper.source, side, "<=", _const(upper.value), k=k, r=r)

    chain_anchor = "C = r(r-1) gamma / 2 = r(r-1)(r+k) / 2 = (2m-nk)/4 iff the graph is in H"
    if cut.exact and g.exact:
        lower_1, lower_2 = report.value("cut_lower_1"), report.value("cut_lower_2")
        chain = cut.value == lower_1 == lower_2 == upper.value
        member = recognize_family_h(graph, r, k)
        rec.fact("family_h_equality", chain_anchor, chain == member, lhs=chain, rhs=member, k=k, r=r)
    else:
        rec.skip("family_h_equality", chain_anchor, "needs exact C and gamma", k=k, r=r,
                 hypothesis="witness-limited")

    entry = report.entry("equal_card_r_max")
    if len(set(cut.witness.sizes)) == 1:
        rec.compare("equal_cardinality", entry.source, _const(r), "<=", _const(entry.value),
                    k=k, r=r, witness=cut.witness)
    else:
        rec.skip("equal_cardinality", entry.source, "witness blocks differ in size", k=k, r=r)

    entry = report.entry("nonpartitionable")
    rec.fact("nonpartitionable_consistency", entry.source + " is false when a partition exists",
             not entry.value, lhs=entry.value, k=k, r=r, witness=cut.witness)

    entry = report.entry("induced_size_lower")
    if entry.applicable:
        smallest = min(alliances.induced_size(graph, block) for block in cut.witness.blocks)
        rec.compare("induced_size_lower", entry.source, _const(smallest), ">=", _const(entry.value), k=k, r=r)


def _verify_family_h(rec: _Recorder, graph: Graph, q: _Quantities, r: int, k: int) -> bool:
    member = recognize_family_h(graph, r, k)
    rec.fact("family_h_member", "K_(r+k) □ K_r is recognized as a member of H", member, lhs=member, k=k, r=r)
    for name, result, expected in (("a", q.a(k), r + k), ("gamma", q.gamma(k), r + k),
                                   ("psi", q.psi(k), r), ("psi_gd", q.psi_gd(k), r)):
        side = _measured(result)
        if side is None:
            rec.fact(f"family_h_{name}", f"{name} on H equals {expected}", False, k=k, r=r)
        else:
            rec.compare(f"family_h_{name}", f"{name} on H equals {expected}", side, "==", _const(expected),
                        k=k, r=r)
    return member


# ========== Product checks ==========

@dataclass
class _Certified:
    """Best bounds certified by constructions, per product protection level."""
    alliance: Dict[int, int] = field(default_factory=dict)
    partition: Dict[int, int] = field(default_factory=dict)

    def add_alliance(self, k: int, size: int) -> None:
        self.alliance[k] = min(size, self.alliance.get(k, size))

    def add_partition(self, k: int, blocks: int) -> None:
        self.partition[k] = max(blocks, self.partition.get(k, blocks))


def _construct(rec: _Recorder, theorem: str, build: Callable[[], Any], k: int, r: Optional[int] = None):
    try:
        return build()
    except AllianceLabError as exc:
        rec.fact(theorem, "construction succeeds on valid factor witnesses", False, k=k, r=r)
        logger.error("%s construction failed: %s", theorem, exc)
        return None


def _verify_products(rec: _Recorder, graph: Graph, q: Optional[_Quantities],
                     factors: Tuple[Graph, Graph], budget: int, threads: int) -> _Certified:
    """
    Product constructions from factor witnesses, each audited, and, when the
    product quantities are available (q is not None), the product theorems.
    """
    g1, g2 = factors
    n1, n2 = g1.n, g2.n
    q1, q2 = _Quantities(g1, budget, threads), _Quantities(g2, budget, threads)
    certified = _Certified()

    for k1 in range(-g1.max_degree, g1.min_degree + 1):
        for k2 in range(-g2.max_degree, g2.min_degree + 1):
            k = k1 + k2
            a1, a2 = q1.a(k1), q2.a(k2)
            if a1.witness is not None and a2.witness is not None:
                block = _construct(rec, "product_alliance", lambda: products.product_alliance(
                    g1, a1.witness, k1, g2, a2.witness, k2, product=graph), k)
                if block is not None:
                    _audit(rec, graph, "product_alliance", block, k, False,
                           expected_count=a1.value * a2.value)
                    certified.add_alliance(k, len(block))
                    if q is not None:
                        rec.compare("product_alliance_bound", "a_(k1+k2) <= a_k1 * a_k2",
                                    _measured(q.a(k)), "<=", _const(len(block)), k=k, witness=block)

            p1, p2 = q1.psi(k1), q2.psi(k2)
            if p1.witness is not None and p2.witness is not None:
                partition = _construct(rec, "product_partition", lambda: products.product_partition(
                    products.FactorPartition(g1, p1.witness, k1),
                    products.FactorPartition(g2, p2.witness, k2), product=graph), k)
                if partition is not None:
                    _audit(rec, graph, "product_partition", partition, k, False,
                           expected_count=p1.value * p2.value)
                    certified.add_partition(k, partition.r)
                    if q is not None:
                        rec.compare("product_partition_bound", "psi_(k1+k2) >= psi_k1 * psi_k2",
                                    _measured(q.psi(k)), ">=", _const(partition.r), k=k, witness=partition)

            _verify_global_products(rec, graph, q, (q1, q2), k1, k2)

    _verify_shifted(rec, graph, q, factors, budget, certified)
    return certified


def _verify_global_products(rec: _Recorder, graph: Graph, q: Optional[_Quantities],
                            factor_quantities: Tuple[_Quantities, _Quantities], k1: int, k2: int) -> None:
    q1, q2 = factor_quantities
    g1, g2 = q1.graph, q2.graph
    k = k1 + k2
    pg1, pg2 = q1.psi_gd(k1), q2.psi_gd(k2)

    sizes = []
    for theorem, result, factor, other, level, side in (
        ("global_product_left", pg1, g1, g2, k2, "left"),
        ("global_product_right", pg2, g2, g1, k1, "right"),
    ):
        if result.witness is None:
            continue
        partition = _construct(rec, theorem, lambda: products.global_product_partition(
            products.FactorPartition(factor, result.witness, k - level, is_global=True),
            other, level, factor_side=side, product=graph), k)
        if partition is None:
            continue
        _audit(rec, graph, theorem, partition, k, True, expected_count=result.value)
        sizes.append(partition.min_block_size)
        if q is not None:
            rec.compare(f"{theorem}_psi_gd", "psi_gd_(k1+k2) >= psi_gd_ki", _measured(q.psi_gd(k)), ">=",
                        _const(partition.r), k=k, witness=partition)

    if q is None:
        return
    if sizes:
        rec.compare("gamma_product_min_block", "gamma_(k1+k2) <= min(x1 n2, x2 n1)",
                    _measured(q.gamma(k)), "<=", _const(min(sizes)), k=k)
    if pg1.witness is not None and pg2.witness is not None:
        rec.compare("gamma_product_psi", "gamma_(k1+k2) <= n1 n2 / max(psi_gd_k1, psi_gd_k2)",
                    _measured(q.gamma(k)), "<=", _const(Fraction(g1.n * g2.n, max(pg1.value, pg2.value))), k=k)

    gamma1 = q1.gamma(k1)
    if gamma1.witness is not None:
        block = products.product_set(gamma1.witness, VertexSet.full(g2.n))
        _audit(rec, graph, "gamma_factor_times_n2", block, k, True)
        rec.compare("gamma_factor_times_n2_bound", "gamma_(k1+k2) <= gamma_k1 * n2",
                    _measured(q.gamma(k)), "<=", _const(len(block)), k=k, witness=block)


def _verify_shifted(rec: _Recorder, graph: Graph, q: Optional[_Quantities],
                    factors: Tuple[Graph, Graph], budget: int, certified: _Certified) -> None:
    g1, g2 = factors
    s = max(g1.max_degree, g2.max_degree)
    for k in range(-min(g1.max_degree, g2.max_degree), max(g1.min_degree, g2.min_degree) + 1):
        report = products.shifted_k_certificates(g1, g2, k, s, budget=budget)
        shifted = report.shifted_k
        for certificate in report.certificates:
            _audit(rec, graph, f"shifted_{certificate.name}", certificate.witness, shifted, False)
        if report.alliance_upper is not None:
            certified.add_alliance(shifted, report.alliance_upper)
            if q is not None:
                rec.compare("shifted_alliance_bound", "a_(k-s) <= min(a_k(G1), a_k(G2))",
                            _measured(q.a(shifted)), "<=", _const(report.alliance_upper), k=shifted)
        if report.partition_lower is not None:
            certified.add_partition(shifted, report.partition_lower)
            if q is not None:
                rec.compare("shifted_partition_bound", "psi_(k-s) >= max(n2 psi_k(G1), n1 psi_k(G2))",
                            _measured(q.psi(shifted)), ">=", _const(report.partition_lower), k=shifted)


def _record_claims(rec: _Recorder, graph: Graph, name: str, claims: Sequence[Tuple[str, int, int]],
                   certified: _Certified) -> List[PublishedClaim]:
    records = []
    for quantity, k, value in claims:
        if quantity == "a":
            bound = certified.alliance.get(k)
            certified_text = f"a_{k} <= {bound}" if bound is not None else None
            if bound is not None:
                rec.compare("claim_vs_certificate", f"claimed a_{k} <= certified", _const(value), "<=",
                            _const(bound), k=k)
            lower = bounds.bounds_defensive(graph.n, graph.m, graph.min_degree, k).entry("a_lower")
            if lower.applicable:
                rec.compare("claim_vs_bound", f"claimed a_{k}: {lower.source}", _const(value), ">=",
                            _const(lower.value), k=k)
        elif quantity == "psi":
            bound = certified.partition.get(k)
            certified_text = f"psi_{k} >= {bound}" if bound is not None else None
            if bound is not None:
                rec.compare("claim_vs_certificate", f"claimed psi_{k} >= certified", _const(value), ">=",
                            _const(bound), k=k)
            upper = bounds.bounds_defensive(graph.n, graph.m, graph.min_degree, k).entry("psi_upper")
            if upper.applicable:
                rec.compare("claim_vs_bound", f"claimed psi_{k}: {upper.source}", _const(value), "<=",
                            _const(upper.value), k=k)
        else:
            raise InputError(f"unknown claimed quantity '{quantity}'")

        records.append(PublishedClaim(
            graph=name, quantity=quantity, k=k, claimed=value,
            status="one-sided certified" if certified_text else "claimed",
            certified=certified_text,
        ))
    return records


# ========== Entry points ==========

def verify_graph(
    graph: Graph,
    k_range: Optional[Tuple[int, int]] = None,
    budget: Optional[int] = None,
    name: str = "graph",
    factors: Optional[Tuple[Graph, Graph]] = None,
    witness_mode: bool = False,
    family_h_params: Optional[Tuple[int, int]] = None,
    claims: Sequence[Tuple[str, int, int]] = (),
    threads: Optional[int] = None
) -> GraphVerification:
    """
    Assert every applicable theorem instance on one graph.

    Args:
        graph: Nonempty graph
        k_range: Inclusive (low, high); defaults to (-Delta, delta)
        budget: Node budget per solve (defaults to settings.VERIFY_BUDGET)
        name: Graph name used in the report
        factors: (G1, G2) when graph was built as cartesian_product(G1, G2)
        witness_mode: Check product constructions only; no exact solving
        family_h_params: (r, k) when graph was generated as a member of H
        claims: Published values to record, as (quantity, k, value)
        threads: Solver thread count (defaults to settings.THREADS); the
            report does not depend on it

    Returns:
        GraphVerification

    Raises:
        InputError: Empty graph, empty k range, or witness mode without factors
    """
    if graph.n == 0:
        raise InputError("cannot verify the empty graph")
    budget = settings.VERIFY_BUDGET if budget is None else budget
    threads = settings.THREADS if threads is None else threads
    low, high = k_range if k_range is not None else (-graph.max_degree, graph.min_degree)
    if low > high:
        raise InputError(f"empty k range {low}..{high}")
    if witness_mode and factors is None:
        raise InputError("witness mode needs the product factors")

    logger.info("verifying %s (n=%d, m=%d, k in %d..%d%s)", name, graph.n, graph.m, low, high,
                ", witness mode" if witness_mode else "")
    rec = _Recorder(name)
    result = GraphVerification(graph=name, n=graph.n, m=graph.m, witness_mode=witness_mode)

    if witness_mode:
        certified = _verify_products(rec, graph, None, factors, budget, threads)
        result.claims = _record_claims(rec, graph, name, claims, certified)
    else:
        q = _Quantities(graph, budget, threads)
        _verify_graph_level(rec, graph, q)
        for k in range(low, high + 1):
            _verify_k(rec, graph, q, k, high)
        if family_h_params is not None:
            result.family_h = _verify_family_h(rec, graph, q, *family_h_params)
        if factors is not None:
            certified = _verify_products(rec, graph, q, factors, budget, threads)
            result.claims = _record_claims(rec, graph, name, claims, certified)

    result.verdicts = rec.verdicts
    logger.info("%s: %d verdicts, %d violated", name, len(result.verdicts), len(result.violations))
    return result


def verify_entry(entry: CorpusEntry, budget: Optional[int] = None,
                 threads: Optional[int] = None) -> GraphVerification:
    return verify_graph(
        entry.graph, k_range=entry.k_range, budget=budget, name=entry.name,
        factors=entry.factors, witness_mode=entry.witness_mode,
        family_h_params=entry.family_h, claims=entry.claims, threads=threads,
    )


def verify_corpus(
    corpus: Optional[Sequence[CorpusEntry]] = None,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
    progress: Optional[Callable[[int, int, GraphVerification], None]] = None
) -> CorpusReport:
    """
    verify_graph over a corpus, graphs in parallel when threads > 1.

    Args:
        corpus: Entries to verify (defaults to builtin_corpus())
        budget: Node budget per solve
        threads: Number of graphs verified concurrently, and the solver thread
            count inside each graph
        progress: Called as progress(done, total, verification) in corpus order

    Returns:
        CorpusReport; report.ok is False when any verdict was violated
    """
    entries = list(builtin_corpus() if corpus is None else corpus)
    threads = settings.THREADS if threads is None else threads

    report = CorpusReport()

    def run(entry: CorpusEntry) -> GraphVerification:
        return verify_entry(entry, budget=budget, threads=threads)

    def collect(results) -> None:
        for done, verification in enumerate(results, start=1):
            report.graphs.append(verification)
            report.total_verdicts += len(verification.verdicts)
            report.held += sum(v.verdict == "holds" for v in verification.verdicts)
            report.skipped += sum(v.verdict == "skipped" for v in verification.verdicts)
            report.violated.extend(verification.violations)
            if progress is not None:
                progress(done, len(entries), verification)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            collect(pool.map(run, entries))
    else:
        collect(map(run, entries))

    logger.info("corpus: %d graphs, %d verdicts, %d violated",
                len(report.graphs), report.total_verdicts, len(report.violated))
    return report
