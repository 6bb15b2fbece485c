"""
Graph, VertexSet and Partition value types.

Vertices are dense integers 0..n-1. Vertex sets are stored as integer
bitsets (bit v set means v is a member), which is what the exact solvers
operate on. All three types are immutable and safe to share between threads.
"""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from app.utils.exceptions import InputError


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    """Bitset with the given vertices set."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """
    Immutable undirected simple graph.

    Attributes:
        n: Order (vertex count)
        edges: Sorted tuple of (u, v) pairs with u < v
        labels: Optional per-vertex labels (products record their pairs here)
    """

    n: int
    edges: Tuple[Tuple[int, int], ...]
    labels: Optional[Tuple[str, ...]] = None

    adjacency: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    neighbor_lists: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    degrees: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"vertex count must be non-negative, got {self.n}")

        adjacency = [0] * self.n
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if u > v:
                raise InputError(f"edge ({u}, {v}) is not normalized (u < v)")
            if (u, v) in seen:
                raise InputError(f"edge ({u}, {v}) is repeated")
            seen.add((u, v))
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u

        if self.labels is not None and len(self.labels) != self.n:
            raise InputError(f"expected {self.n} labels, got {len(self.labels)}")

        object.__setattr__(self, "adjacency", tuple(adjacency))
        object.__setattr__(self, "neighbor_lists", tuple(tuple(iter_bits(a)) for a in adjacency))
        object.__setattr__(self, "degrees", tuple(a.bit_count() for a in adjacency))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def min_degree(self) -> int:
        """delta; 0 for the empty graph."""
        return min(self.degrees, default=0)

    @property
    def max_degree(self) -> int:
        """Delta; 0 for the empty graph."""
        return max(self.degrees, default=0)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.degrees[v]

    def neighbors(self, v: int) -> Tuple[int, ...]:
        self._check_vertex(v)
        return self.neighbor_lists[v]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adjacency[u] >> v & 1)

    @property
    def is_regular(self) -> bool:
        return self.min_degree == self.max_degree

    @property
    def all_degrees_even(self) -> bool:
        return all(d % 2 == 0 for d in self.degrees)

    @property
    def all_degrees_odd(self) -> bool:
        return self.n > 0 and all(d % 2 == 1 for d in self.degrees)

    def label(self, v: int) -> str:
        self._check_vertex(v)
        return self.labels[v] if self.labels is not None else str(v)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} outside 0..{self.n - 1}")


@dataclass(frozen=True)
class VertexSet:
    """
    Subset of the vertices of a graph of order n, stored as a bitset.
    """

    n: int
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise InputError(f"vertex set has members outside 0..{self.n - 1}")

    @classmethod
    def of(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        """Build a set over a graph of order n from an iterable of vertices."""
        vertices = list(vertices)
        for v in vertices:
            if not 0 <= v < n:
                raise InputError(f"vertex {v} outside 0..{n - 1}")
        return cls(n, mask_of(vertices))

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    @property
    def min_vertex(self) -> int:
        if not self.mask:
            raise InputError("empty vertex set has no minimum")
        return (self.mask & -self.mask).bit_length() - 1

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, ((1 << self.n) - 1) & ~self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.mask >> v & 1)

    def to_list(self) -> List[int]:
        return list(self.members)


@dataclass(frozen=True)
class Partition:
    """
    Ordered list of disjoint nonempty blocks covering 0..n-1.

    Blocks are kept in canonical order (sorted by their minimum vertex), so two
    partitions with the same blocks compare equal.
    """

    n: int
    blocks: Tuple[VertexSet, ...]

    def __post_init__(self):
        covered = 0
        for block in self.blocks:
            if block.n != self.n:
                raise InputError("partition block belongs to a graph of different order")
            if block.is_empty:
                raise InputError("partition blocks must be nonempty")
            if covered & block.mask:
                raise InputError("partition blocks overlap")
            covered |= block.mask
        if covered != (1 << self.n) - 1:
            raise InputError("partition blocks do not cover every vertex")
        ordered = tuple(sorted(self.blocks, key=lambda b: b.min_vertex))
        object.__setattr__(self, "blocks", ordered)

    @classmethod
    def of(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls(n, tuple(VertexSet.of(n, block) for block in blocks))

    @classmethod
    def from_masks(cls, n: int, masks: Sequence[int]) -> "Partition":
        return cls(n, tuple(VertexSet(n, mask) for mask in masks))

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls(n, (VertexSet.full(n),))

    @property
    def r(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def min_block_size(self) -> int:
        return min(self.sizes)

    def block_index(self) -> Tuple[int, ...]:
        """For every vertex, the index of the block containing it."""
        index = [0] * self.n
        for i, block in enumerate(self.blocks):
            for v in block:
                index[v] = i
        return tuple(index)

    def to_lists(self) -> List[List[int]]:
        return [block.to_list() for block in self.blocks]
