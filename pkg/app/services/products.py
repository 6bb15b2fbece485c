"""
Alliance and partition constructions on Cartesian products.

Every constructor checks its factor inputs, builds the product blocks and
re-checks each block against its target predicate before returning it.
Product vertex (u, v) is numbered u * n2 + v, as in graph_builder.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

from app.models.graph import Graph, Partition, VertexSet, mask_of
from app.schemas.products import Certificate, ShiftedCertificateReport
from app.services import alliances
from app.services.graph_builder import cartesian_product
from app.services.solvers import alliance_number, partition_number
from app.utils.exceptions import CertificateError, InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactorPartition:
    """
    Partition of a factor graph into (global) defensive k-alliances.

    Raises:
        InputError: If the partition is over another vertex count or some
            block fails the predicate
    """

    graph: Graph
    partition: Partition
    k: int
    is_global: bool = False

    def __post_init__(self):
        if self.partition.n != self.graph.n:
            raise InputError(
                f"factor partition is over {self.partition.n} vertices, graph has {self.graph.n}"
            )
        check = alliances.is_global_defensive_alliance if self.is_global else alliances.is_defensive_alliance
        for index, block in enumerate(self.partition.blocks):
            if not check(self.graph, block, self.k):
                kind = "global defensive" if self.is_global else "defensive"
                raise InputError(f"factor block {index} {block.to_list()} is not a {kind} {self.k}-alliance")

    @property
    def r(self) -> int:
        return self.partition.r

    @property
    def x(self) -> int:
        """Minimum block cardinality."""
        return self.partition.min_block_size


def product_set(s1: VertexSet, s2: VertexSet) -> VertexSet:
    """s1 x s2 as a vertex set of the product of their graphs."""
    n2 = s2.n
    return VertexSet(s1.n * n2, mask_of(u * n2 + v for u in s1 for v in s2))


def _verify(product: Graph, block: VertexSet, k: int, is_global: bool) -> None:
    ok = (alliances.is_global_defensive_alliance(product, block, k) if is_global
          else alliances.is_defensive_alliance(product, block, k))
    if not ok:
        raise CertificateError(f"constructed block {block.to_list()} fails the {k}-alliance check")


def product_alliance(
    g1: Graph,
    s1: VertexSet,
    k1: int,
    g2: Graph,
    s2: VertexSet,
    k2: int,
    product: Optional[Graph] = None
) -> VertexSet:
    """
    s1 x s2, a defensive (k1 + k2)-alliance of g1 □ g2.

    Args:
        g1, g2: Factor graphs
        s1, s2: Defensive k1- and k2-alliances of the factors
        k1, k2: Protection levels
        product: Prebuilt g1 □ g2, if available

    Returns:
        The product set, verified against the predicate

    Raises:
        InputError: If s1 or s2 is not a defensive alliance of its factor
    """
    if not alliances.is_defensive_alliance(g1, s1, k1):
        raise InputError(f"{s1.to_list()} is not a defensive {k1}-alliance of the first factor")
    if not alliances.is_defensive_alliance(g2, s2, k2):
        raise InputError(f"{s2.to_list()} is not a defensive {k2}-alliance of the second factor")

    product = product or cartesian_product(g1, g2)
    block = product_set(s1, s2)
    _verify(product, block, k1 + k2, False)
    return block


def product_partition(
    f1: FactorPartition,
    f2: FactorPartition,
    product: Optional[Graph] = None
) -> Partition:
    """
    The r1 * r2 blocks S_j x S_l, each a defensive (k1 + k2)-alliance of the
    product; certifies psi_(k1+k2) >= psi_k1 * psi_k2.
    """
    product = product or cartesian_product(f1.graph, f2.graph)
    k = f1.k + f2.k
    blocks = []
    for s1 in f1.partition.blocks:
        for s2 in f2.partition.blocks:
            block = product_set(s1, s2)
            _verify(product, block, k, False)
            blocks.append(block)

    logger.debug("product partition: %d x %d blocks at k=%d", f1.r, f2.r, k)
    return Partition(product.n, tuple(blocks))


def global_product_partition(
    f: FactorPartition,
    other: Graph,
    k2: int,
    factor_side: str = "left",
    product: Optional[Graph] = None
) -> Partition:
    """
    Blocks S_j x V(other) (factor_side="left") or V(other) x S_j
    (factor_side="right"), each a global defensive (k + k2)-alliance.

    Args:
        f: Global factor partition
        other: The other factor
        k2: Protection level granted by the other factor, -Delta2 <= k2 <= delta2
        factor_side: Coordinate the partitioned factor occupies
        product: Prebuilt product graph in the matching orientation

    Raises:
        InputError: If f is not global, k2 is out of range or factor_side is unknown
    """
    if not f.is_global:
        raise InputError("global product partition needs a partition into global alliances")
    if k2 > other.min_degree or k2 < -other.max_degree:
        raise InputError(
            f"k2={k2} outside -{other.max_degree}..{other.min_degree} for the other factor"
        )
    everything = VertexSet.full(other.n)
    if factor_side == "left":
        product = product or cartesian_product(f.graph, other)
        pieces = [product_set(s, everything) for s in f.partition.blocks]
    elif factor_side == "right":
        product = product or cartesian_product(other, f.graph)
        pieces = [product_set(everything, s) for s in f.partition.blocks]
    else:
        raise InputError(f"factor_side must be 'left' or 'right', got '{factor_side}'")

    for block in pieces:
        _verify(product, block, f.k + k2, True)
    return Partition(product.n, tuple(pieces))


def shifted_k_certificates(
    g1: Graph,
    g2: Graph,
    k: int,
    s: int,
    budget: Optional[int] = None
) -> ShiftedCertificateReport:
    """
    Certificates for a_(k-s)(g1 □ g2) <= min(a_k(g1), a_k(g2)) and
    psi_(k-s)(g1 □ g2) >= max(n2 psi_k(g1), n1 psi_k(g2)).

    A minimum k-alliance S of either factor gives the alliance S x {v}
    (or {u} x S); a partition of a factor into psi_k blocks gives the n2 * psi_k
    blocks S_j x {v}. Factors without a k-alliance contribute nothing.

    Raises:
        InputError: Unless max(Delta1, Delta2) <= s <= Delta1 + Delta2 + k
    """
    low, high = max(g1.max_degree, g2.max_degree), g1.max_degree + g2.max_degree + k
    if not low <= s <= high:
        raise InputError(f"s={s} outside {low}..{high}")

    product = cartesian_product(g1, g2)
    shifted = k - s
    certificates: List[Certificate] = []

    for side, factor, other in (("first", g1, g2), ("second", g2, g1)):
        alliance = alliance_number(factor, k, budget=budget)
        if alliance.witness is not None:
            single = VertexSet.of(other.n, [0])
            block = (product_set(alliance.witness, single) if side == "first"
                     else product_set(single, alliance.witness))
            certificates.append(Certificate(
                name=f"alliance_from_{side}",
                claim=f"a_{shifted} <= {len(block)}",
                k=shifted,
                bound=len(block),
                witness=block,
                verified=alliances.is_defensive_alliance(product, block, shifted),
            ))

        partition = partition_number(factor, k, budget=budget)
        if partition.witness is not None:
            blocks = []
            for block in partition.witness.blocks:
                for v in other.vertices:
                    single = VertexSet.of(other.n, [v])
                    blocks.append(product_set(block, single) if side == "first" else product_set(single, block))
            witness = Partition(product.n, tuple(blocks))
            certificates.append(Certificate(
                name=f"partition_from_{side}",
                claim=f"psi_{shifted} >= {witness.r}",
                k=shifted,
                bound=witness.r,
                witness=witness,
                verified=all(alliances.is_defensive_alliance(product, b, shifted) for b in blocks),
            ))

    verified = [c for c in certificates if c.verified]
    alliance_bounds = [c.bound for c in verified if c.name.startswith("alliance")]
    partition_bounds = [c.bound for c in verified if c.name.startswith("partition")]
    if len(verified) != len(certificates):
        logger.warning("shifted certificates k=%d s=%d: %d block(s) failed the predicate",
                       k, s, len(certificates) - len(verified))

    return ShiftedCertificateReport(
        k=k,
        s=s,
        shifted_k=shifted,
        alliance_upper=min(alliance_bounds, default=None),
        partition_lower=max(partition_bounds, default=None),
        certificates=certificates,
    )
