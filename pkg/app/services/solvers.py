"""
Exact solvers for alliance numbers, partition numbers, inter-alliance cuts,
isoperimetric number, bipartition width and alliance bisections.

Vertex sets are integer bitsets. Subset searches enumerate candidates in
(size, lexicographic) order, so the first accepted candidate of the smallest
feasible size is the reported witness. Partition searches assign vertices
0..n-1 to blocks in restricted-growth order, which visits partitions in
canonical block order.

Every search charges one node per candidate or assignment against a budget;
when the budget runs out the result is marked inexact and carries the best
witness found so far.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from app.config import settings
from app.models.graph import Graph, Partition, VertexSet, mask_of
from app.schemas.results import IsoResult, SolveResult
from app.services import alliances
from app.services.bounds import partition_search_upper
from app.utils.exact import ceil_div
from app.utils.exceptions import InputError

logger = logging.getLogger(__name__)


class NodeBudget:
    """Node counter shared by the workers of one solve."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0
        self.exhausted = False
        self._lock = threading.Lock()

    def spend(self, nodes: int = 1) -> bool:
        """Charge nodes; False once the limit has been passed."""
        with self._lock:
            self.used += nodes
            if self.used > self.limit:
                self.exhausted = True
            return not self.exhausted

    @property
    def remaining(self) -> int:
        return max(0, self.limit - self.used)

    def charge(self, nodes: int) -> bool:
        """
        Charge the nodes a finished chunk used, in chunk order.

        A chunk that ran past the remaining allowance leaves the counter
        exhausted exactly as a sequential spend() loop would.
        """
        with self._lock:
            if nodes <= self.limit - self.used:
                self.used += nodes
                return True
            self.used = self.limit + 1
            self.exhausted = True
            return False


class _ChunkBudget:
    """Private node counter of one chunk, capped at the allowance left when it starts."""

    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def spend(self) -> bool:
        self.used += 1
        return self.used <= self.cap


def _resolve(budget: Optional[int], threads: Optional[int]) -> Tuple[NodeBudget, int]:
    limit = settings.SEARCH_BUDGET if budget is None else budget
    workers = settings.THREADS if threads is None else threads
    return NodeBudget(limit), max(1, workers)


def _ordered_map(fn: Callable, items: Iterable, threads: int):
    """map() in item order; on a thread pool when threads > 1."""
    if threads <= 1:
        return map(fn, items)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _require_vertices(graph: Graph, minimum: int = 1) -> None:
    if graph.n < minimum:
        raise InputError(f"graph needs at least {minimum} vertex(es), has {graph.n}")


def _thresholds(graph: Graph, k: int) -> List[int]:
    return [alliances.required_inside(d, k) for d in graph.degrees]


def _first_subset(
    pool: Sequence[int],
    size: int,
    accepts: Callable[[Tuple[int, ...], int], bool],
    counter: NodeBudget,
    threads: int,
    heads: Optional[Sequence[int]] = None
) -> Optional[Tuple[int, ...]]:
    """
    Lexicographically first size-subset of pool passing accepts().

    The enumeration space is split by the first element. Each chunk counts
    its own nodes and the shared budget is charged in chunk order, so the
    witness, node count and exhaustion do not depend on the number of threads.
    """
    if size < 1 or size > len(pool):
        return None

    positions = list(range(len(pool) - size + 1) if heads is None else heads)
    first_hit = [len(positions)]

    def scan(order: int) -> Tuple[int, Optional[Tuple[int, ...]]]:
        chunk = _ChunkBudget(counter.remaining)
        if order > first_hit[0]:
            return 0, None
        i = positions[order]
        head = pool[i]
        for tail in combinations(pool[i + 1:], size - 1):
            if not chunk.spend():
                break
            combo = (head,) + tail
            if accepts(combo, mask_of(combo)):
                first_hit[0] = min(first_hit[0], order)
                return chunk.used, combo
        return chunk.used, None

    for used, found in _ordered_map(scan, range(len(positions)), threads):
        if not counter.charge(used):
            return None
        if found is not None:
            return found
    return None


def _charged_best(chunks: Iterable[Tuple[int, List[Tuple[int, tuple]]]], counter: NodeBudget):
    """
    Merge per-chunk improvement lists of a minimization in chunk order.

    Each chunk reports its node count and (nodes spent, candidate) for every
    strict improvement; only improvements reached within the shared budget count.
    """
    best = None
    for used, improvements in chunks:
        allowed = min(used, counter.remaining)
        within = counter.charge(used)
        reached = [candidate for spent, candidate in improvements if spent <= allowed]
        if reached and (best is None or reached[-1] < best):
            best = reached[-1]
        if not within:
            break
    return best


def _alliance_acceptor(graph: Graph, need: List[int], is_global: bool):
    adjacency = graph.adjacency
    full = graph.full_mask
    closed = [adjacency[v] | 1 << v for v in graph.vertices]

    def accepts(combo: Tuple[int, ...], mask: int) -> bool:
        for v in combo:
            if (adjacency[v] & mask).bit_count() < need[v]:
                return False
        if is_global:
            covered = 0
            for v in combo:
                covered |= closed[v]
            return covered == full
        return True

    return accepts


def alliance_number(
    graph: Graph,
    k: int,
    is_global: bool = False,
    budget: Optional[int] = None,
    threads: Optional[int] = None
) -> SolveResult:
    """
    Minimum cardinality of a (global) defensive k-alliance: a_k^d or gamma_k^d.

    Args:
        graph: Nonempty graph
        k: Protection level (any integer)
        is_global: Require the alliance to dominate the graph
        budget: Node budget (defaults to settings.SEARCH_BUDGET)
        threads: Worker count (defaults to settings.THREADS)

    Returns:
        SolveResult with the lexicographically least minimum witness, or
        value None when no such alliance exists
    """
    _require_vertices(graph)
    counter, threads = _resolve(budget, threads)
    quantity = "gamma" if is_global else "a"
    n, degrees = graph.n, graph.degrees
    need = _thresholds(graph, k)
    accepts = _alliance_acceptor(graph, need, is_global)

    eligible = [v for v in graph.vertices if need[v] <= degrees[v]]
    if not eligible:
        return SolveResult(quantity=quantity, k=k, is_global=is_global, value=None)

    # A member v needs need[v] neighbors inside, so |S| >= need[v] + 1.
    lower = max(1, min(need[v] for v in eligible) + 1)
    if is_global:
        # Each member dominates at most degree - need outside vertices.
        reach = max(degrees[v] - need[v] for v in eligible) + 1
        lower = max(lower, ceil_div(n, reach))

    logger.debug("alliance search k=%d global=%s n=%d from size %d", k, is_global, n, lower)
    for size in range(lower, n + 1):
        pool = [v for v in eligible if need[v] <= size - 1]
        found = _first_subset(pool, size, accepts, counter, threads)
        if found is not None:
            return SolveResult(
                quantity=quantity, k=k, is_global=is_global, value=size,
                witness=VertexSet(n, mask_of(found)),
                nodes_explored=counter.used, exact=not counter.exhausted
            )
        if counter.exhausted:
            break

    if counter.exhausted:
        logger.warning("alliance search k=%d global=%s hit its budget of %d nodes", k, is_global, counter.limit)
        whole = graph.full_mask
        if accepts(tuple(graph.vertices), whole):
            return SolveResult(
                quantity=quantity, k=k, is_global=is_global, value=n,
                witness=VertexSet(n, whole), nodes_explored=counter.used, exact=False
            )
        return SolveResult(quantity=quantity, k=k, is_global=is_global, nodes_explored=counter.used, exact=False)

    return SolveResult(quantity=quantity, k=k, is_global=is_global, value=None, nodes_explored=counter.used)


def domination_number(
    graph: Graph,
    budget: Optional[int] = None,
    threads: Optional[int] = None
) -> SolveResult:
    """Domination number gamma with the lexicographically least minimum dominating set."""
    _require_vertices(graph)
    counter, threads = _resolve(budget, threads)
    n, adjacency, full = graph.n, graph.adjacency, graph.full_mask
    closed = [adjacency[v] | 1 << v for v in graph.vertices]

    def accepts(combo: Tuple[int, ...], mask: int) -> bool:
        covered = 0
        for v in combo:
            covered |= closed[v]
        return covered == full

    pool = list(graph.vertices)
    for size in range(max(1, ceil_div(n, graph.max_degree + 1)), n + 1):
        found = _first_subset(pool, size, accepts, counter, threads)
        if found is not None:
            return SolveResult(
                quantity="dom", value=size, witness=VertexSet(n, mask_of(found)),
                nodes_explored=counter.used, exact=not counter.exhausted
            )
        if counter.exhausted:
            break

    logger.warning("domination search hit its budget of %d nodes", counter.limit)
    return SolveResult(
        quantity="dom", value=n, witness=VertexSet.full(n),
        nodes_explored=counter.used, exact=False
    )


class _PartitionSearch:
    """
    Depth-first block assignment for partitions into exactly r (global)
    defensive k-alliances.

    A placement is rejected as soon as some assigned vertex can no longer
    reach its inside-degree threshold with the neighbors still unassigned,
    or (global) can no longer get a neighbor in every other block.
    """

    def __init__(
        self,
        graph: Graph,
        k: int,
        r: int,
        is_global: bool,
        counter: NodeBudget,
        minimize_cut: bool = False
    ):
        self.graph = graph
        self.n = graph.n
        self.r = r
        self.is_global = is_global
        self.counter = counter
        self.minimize_cut = minimize_cut
        self.adjacency = graph.adjacency
        self.need = _thresholds(graph, k)

        self.blocks = [0] * r
        self.owner = [-1] * graph.n
        self.unassigned = graph.full_mask
        self.opened = 0

        self.best: Optional[List[int]] = None
        self.best_cut: Optional[int] = None
        self.aborted = False

    def run(self) -> Optional[List[int]]:
        if self.r > self.n or any(need > deg for need, deg in zip(self.need, self.graph.degrees)):
            return None
        self._dfs(0, 0)
        return self.best

    def _dfs(self, v: int, cut: int) -> bool:
        """Returns True when the search must stop (solution in feasibility mode, or budget)."""
        if v == self.n:
            if self._complete():
                self.best = list(self.blocks)
                self.best_cut = cut
                return not self.minimize_cut
            return False

        bit = 1 << v
        remaining = self.n - v - 1
        assigned = self.graph.full_mask & ~self.unassigned

        for b in range(min(self.opened + 1, self.r)):
            opening = b == self.opened
            if remaining < self.r - (self.opened + 1 if opening else self.opened):
                continue
            if not self.counter.spend():
                self.aborted = True
                return True

            added = 0
            if self.minimize_cut:
                added = (self.adjacency[v] & assigned & ~self.blocks[b]).bit_count()
                if self.best_cut is not None and cut + added >= self.best_cut:
                    continue

            self.blocks[b] |= bit
            self.owner[v] = b
            self.unassigned &= ~bit
            if opening:
                self.opened += 1

            stop = self._consistent(v) and self._dfs(v + 1, cut + added)

            if opening:
                self.opened -= 1
            self.unassigned |= bit
            self.owner[v] = -1
            self.blocks[b] &= ~bit

            if stop:
                return True
        return False

    def _consistent(self, v: int) -> bool:
        for u in (v,) + self.graph.neighbor_lists[v]:
            owner = self.owner[u]
            if owner < 0:
                continue
            adjacency = self.adjacency[u]
            if (adjacency & (self.blocks[owner] | self.unassigned)).bit_count() < self.need[u]:
                return False
            if self.is_global:
                # Each block u is not in must receive a distinct unassigned neighbor
                # unless it already holds one.
                missing = self.r - self.opened
                for c in range(self.opened):
                    if c != owner and not adjacency & self.blocks[c]:
                        missing += 1
                if missing and (adjacency & self.unassigned).bit_count() < missing:
                    return False
        return True

    def _complete(self) -> bool:
        adjacency, blocks = self.adjacency, self.blocks
        for u in range(self.n):
            owner = self.owner[u]
            if (adjacency[u] & blocks[owner]).bit_count() < self.need[u]:
                return False
            if self.is_global:
                for c in range(self.r):
                    if c != owner and not adjacency[u] & blocks[c]:
                        return False
        return True


def partition_number(
    graph: Graph,
    k: int,
    is_global: bool = False,
    budget: Optional[int] = None,
    threads: Optional[int] = None
) -> SolveResult:
    """
    Maximum number of blocks in a partition into (global) defensive
    k-alliances: psi_k^d or psi_k^gd.

    Candidate block counts are tried downward from the least applicable closed
    form upper bound; the first feasible count is the answer.

    Returns:
        SolveResult with the canonical first witness partition, value 1 when
        only the whole vertex set works, None when k > delta
    """
    _require_vertices(graph)
    counter, _ = _resolve(budget, threads)
    quantity = "psi-gd" if is_global else "psi"
    n = graph.n

    if k > graph.min_degree:
        return SolveResult(quantity=quantity, k=k, is_global=is_global, value=None)

    need = _thresholds(graph, k)
    if any(need[v] > graph.degrees[v] for v in graph.vertices):
        return SolveResult(quantity=quantity, k=k, is_global=is_global, value=None)

    upper = partition_search_upper(graph, k, is_global)
    logger.debug("partition search k=%d global=%s n=%d from r=%d", k, is_global, n, upper)

    for r in range(upper, 1, -1):
        search = _PartitionSearch(graph, k, r, is_global, counter)
        found = search.run()
        if search.aborted:
            logger.warning("partition search k=%d global=%s hit its budget at r=%d", k, is_global, r)
            break
        if found is not None:
            return SolveResult(
                quantity=quantity, k=k, is_global=is_global, value=r,
                witness=Partition.from_masks(n, found), nodes_explored=counter.used
            )

    return SolveResult(
        quantity=quantity, k=k, is_global=is_global, value=1,
        witness=Partition.trivial(n), nodes_explored=counter.used,
        exact=not counter.exhausted
    )


def min_cut_partition(
    graph: Graph,
    k: int,
    r: int,
    budget: Optional[int] = None,
    threads: Optional[int] = None
) -> SolveResult:
    """
    C_(r,k)^gd: minimum number of cross-block edges over partitions into r
    global defensive k-alliances (branch and bound on the partial cut).

    Raises:
        InputError: If r < 2
    """
    _require_vertices(graph)
    if r < 2:
        raise InputError(f"cut partitions need r >= 2, got {r}")
    counter, _ = _resolve(budget, threads)

    if k > graph.min_degree or r > graph.n:
        return SolveResult(quantity="cut", k=k, r=r, is_global=True, value=None)

    search = _PartitionSearch(graph, k, r, True, counter, minimize_cut=True)
    found = search.run()
    if search.aborted:
        logger.warning("cut search k=%d r=%d hit its budget of %d nodes", k, r, counter.limit)
    if found is None:
        return SolveResult(
            quantity="cut", k=k, r=r, is_global=True, value=None,
            nodes_explored=counter.used, exact=not search.aborted
        )
    return SolveResult(
        quantity="cut", k=k, r=r, is_global=True, value=search.best_cut,
        witness=Partition.from_masks(graph.n, found),
        nodes_explored=counter.used, exact=not search.aborted
    )


def isoperimetric_number(
    graph: Graph,
    budget: Optional[int] = None,
    threads: Optional[int] = None
) -> IsoResult:
    """
    Exact isoperimetric number: min over nonempty S with |S| <= n/2 of
    |boundary(S)| / |S|, as a reduced fraction.

    Ties are broken by smaller |S|, then lexicographically.

    Raises:
        InputError: If n < 2
    """
    _require_vertices(graph, 2)
    counter, threads = _resolve(budget, threads)
    n, adjacency, full = graph.n, graph.adjacency, graph.full_mask
    half = n // 2

    def scan(task: Tuple[int, int]):
        size, i = task
        chunk = _ChunkBudget(counter.remaining)
        best, improvements = None, []
        for tail in combinations(range(i + 1, n), size - 1):
            if not chunk.spend():
                break
            combo = (i,) + tail
            mask = mask_of(combo)
            outside = full & ~mask
            boundary = sum((adjacency[v] & outside).bit_count() for v in combo)
            if best is None or boundary < best:
                best = boundary
                improvements.append((chunk.used, (Fraction(boundary, size), size, combo)))
        return chunk.used, improvements

    tasks = [(size, i) for size in range(1, half + 1) for i in range(n - size + 1)]
    best = _charged_best(_ordered_map(scan, tasks, threads), counter)

    if counter.exhausted:
        logger.warning("isoperimetric search hit its budget of %d nodes", counter.limit)
    if best is None:
        return IsoResult(nodes_explored=counter.used, exact=False)
    value, _, combo = best
    return IsoResult(
        value=value, witness=VertexSet(n, mask_of(combo)),
        nodes_explored=counter.used, exact=not counter.exhausted
    )


def bipartition_width(
    graph: Graph,
    budget: Optional[int] = None,
    threads: Optional[int] = None
) -> SolveResult:
    """
    bw: minimum cut over sets X with |X| = floor(n/2); witness is the
    lexicographically least minimizing X.

    Raises:
        InputError: If n < 2
    """
    _require_vertices(graph, 2)
    counter, threads = _resolve(budget, threads)
    n, adjacency, full = graph.n, graph.adjacency, graph.full_mask
    size = n // 2

    def scan(i: int):
        chunk = _ChunkBudget(counter.remaining)
        best, improvements = None, []
        for tail in combinations(range(i + 1, n), size - 1):
            if not chunk.spend():
                break
            combo = (i,) + tail
            outside = full & ~mask_of(combo)
            cut = sum((adjacency[v] & outside).bit_count() for v in combo)
            if best is None or cut < best:
                best = cut
                improvements.append((chunk.used, (cut, combo)))
        return chunk.used, improvements

    # For even n the complement of a minimizer is a minimizer too, so the
    # least one contains vertex 0.
    heads = [0] if n % 2 == 0 else range(n - size + 1)
    best = _charged_best(_ordered_map(scan, heads, threads), counter)

    if counter.exhausted:
        logger.warning("bipartition width search hit its budget of %d nodes", counter.limit)
    if best is None:
        return SolveResult(quantity="bw", nodes_explored=counter.used, exact=False)
    cut, combo = best
    return SolveResult(
        quantity="bw", value=cut, witness=VertexSet(n, mask_of(combo)),
        nodes_explored=counter.used, exact=not counter.exhausted
    )


def alliance_bisection(
    graph: Graph,
    k: int,
    budget: Optional[int] = None,
    threads: Optional[int] = None
) -> SolveResult:
    """
    A bisection {X, Y} (|X| = |Y| or |X| = |Y| + 1) whose sides are both
    global defensive k-alliances.

    Returns:
        SolveResult with value = cut of the bisection found and the bisection
        as witness, or value None when none exists

    Raises:
        InputError: If n < 2
    """
    _require_vertices(graph, 2)
    counter, threads = _resolve(budget, threads)
    n, adjacency, full = graph.n, graph.adjacency, graph.full_mask
    need = _thresholds(graph, k)
    side = _alliance_acceptor(graph, need, True)

    def accepts(combo: Tuple[int, ...], mask: int) -> bool:
        if not side(combo, mask):
            return False
        rest = full & ~mask
        rest_combo = tuple(v for v in graph.vertices if rest >> v & 1)
        return side(rest_combo, rest)

    size = n // 2
    heads = [0] if n % 2 == 0 else None
    found = _first_subset(list(graph.vertices), size, accepts, counter, threads, heads=heads)
    if counter.exhausted:
        logger.warning("bisection search k=%d hit its budget of %d nodes", k, counter.limit)

    if found is None:
        return SolveResult(quantity="bisect", k=k, r=2, is_global=True, value=None,
                           nodes_explored=counter.used, exact=not counter.exhausted)

    mask = mask_of(found)
    outside = full & ~mask
    cut = sum((adjacency[v] & outside).bit_count() for v in found)
    return SolveResult(
        quantity="bisect", k=k, r=2, is_global=True, value=cut,
        witness=Partition.from_masks(n, [mask, outside]),
        nodes_explored=counter.used, exact=not counter.exhausted
    )
