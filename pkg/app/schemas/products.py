"""
Pydantic schemas for Cartesian product certificates.
"""

from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, InstanceOf, field_serializer

from app.models.graph import Partition, VertexSet
from app.schemas.common import serialize_quantity


class Certificate(BaseModel):
    """
    A constructed alliance or partition of a product graph together with the
    bound it certifies.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    claim: str = Field(..., description="Inequality certified, e.g. 'a_-2 <= 4'")
    k: int = Field(..., description="Protection level of the constructed blocks")
    bound: int
    witness: Union[InstanceOf[VertexSet], InstanceOf[Partition]]
    verified: bool

    @field_serializer("witness")
    def _serialize_witness(self, witness, _info):
        return serialize_quantity(witness)


class ShiftedCertificateReport(BaseModel):
    """Certificates for the shifted protection level k - s on a product."""
    k: int
    s: int
    shifted_k: int
    alliance_upper: Optional[int] = Field(None, description="Certified upper bound on a_(k-s)")
    partition_lower: Optional[int] = Field(None, description="Certified lower bound on psi_(k-s)")
    certificates: List[Certificate] = Field(default_factory=list)

    @property
    def applicable(self) -> bool:
        return bool(self.certificates) and all(c.verified for c in self.certificates)
