"""
Pydantic schemas for the theorem harness report.
"""

from typing import Any, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from app.schemas.common import serialize_quantity

Verdict = Literal["holds", "violated", "skipped"]
HypothesisStatus = Literal["established", "not-established", "witness-limited"]


class TheoremVerdict(BaseModel):
    """
    Outcome of asserting one bound or identity on one instance.

    verdict is "violated" only when both sides are exact (or the side that
    decides the comparison is backed by an explicit witness).
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    theorem: str
    anchor: str = Field(..., description="The inequality or identity asserted")
    graph: str
    k: Optional[int] = None
    r: Optional[int] = None
    lhs: Any = None
    rhs: Any = None
    hypothesis: HypothesisStatus = "established"
    verdict: Verdict
    tight: bool = Field(False, description="Holds with equality")
    reason: Optional[str] = None
    witness: Any = None

    @field_serializer("lhs", "rhs", "witness")
    def _serialize(self, value, _info):
        return serialize_quantity(value)


class PublishedClaim(BaseModel):
    """A published value that is out of exact reach, with what could be certified."""
    graph: str
    quantity: str
    k: int
    claimed: int
    status: Literal["claimed", "one-sided certified"]
    certified: Optional[str] = Field(None, description="Inequality certified by a construction")


class GraphVerification(BaseModel):
    """All verdicts for one corpus graph."""
    graph: str
    n: int
    m: int
    witness_mode: bool = False
    family_h: Optional[bool] = None
    verdicts: List[TheoremVerdict] = Field(default_factory=list)
    claims: List[PublishedClaim] = Field(default_factory=list)

    @property
    def violations(self) -> List[TheoremVerdict]:
        return [v for v in self.verdicts if v.verdict == "violated"]


class CorpusReport(BaseModel):
    """Aggregate of verify_graph over a corpus."""
    graphs: List[GraphVerification] = Field(default_factory=list)
    total_verdicts: int = 0
    held: int = 0
    skipped: int = 0
    violated: List[TheoremVerdict] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violated
