"""
Pydantic schemas for solver results.
"""

from fractions import Fraction
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, InstanceOf, field_serializer

from app.models.graph import Partition, VertexSet
from app.schemas.common import serialize_quantity


class SolveResult(BaseModel):
    """
    Result of an exact search.

    value is None when no feasible object exists. When a node budget truncated
    the search, exact is False and value is the bound certified by the witness.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    quantity: str = Field(..., description="a | gamma | dom | psi | psi-gd | cut | bw | bisect")
    k: Optional[int] = None
    r: Optional[int] = None
    is_global: bool = False
    value: Optional[int] = None
    witness: Optional[Union[InstanceOf[VertexSet], InstanceOf[Partition]]] = None
    nodes_explored: int = 0
    exact: bool = True

    @field_serializer("witness")
    def _serialize_witness(self, witness, _info):
        return serialize_quantity(witness)

    @property
    def found(self) -> bool:
        return self.value is not None


class IsoResult(BaseModel):
    """
    Exact isoperimetric number with a minimizing set of size <= n/2.

    value and witness are None when the search budget ran out before the
    first candidate set.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: Optional[InstanceOf[Fraction]] = None
    witness: Optional[InstanceOf[VertexSet]] = None
    nodes_explored: int = 0
    exact: bool = True

    @field_serializer("value", "witness")
    def _serialize(self, value, _info):
        return serialize_quantity(value)


class SpectralResult(BaseModel):
    """Algebraic connectivity and the Laplacian spectrum it was read from."""
    mu: float = Field(..., ge=0, description="Second-smallest Laplacian eigenvalue")
    residual: float = Field(..., ge=0, description="Largest eigenpair residual norm")
    eigenvalues: List[float] = Field(default_factory=list, description="Spectrum, ascending")
    connected: bool
    tol: float


class CutSummary(BaseModel):
    """Cross-block edge count of a partition and its pairwise breakdown."""
    total: int = Field(..., ge=0)
    pairwise: List[List[int]] = Field(default_factory=list)
