"""
Pydantic schemas for the HTTP API requests and responses.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from app.models.graph import Graph
from app.schemas.bounds import BoundReport
from app.schemas.results import SolveResult
from app.services.graph_builder import build_graph

Quantity = Literal["a", "gamma", "dom", "psi", "psi-gd", "cut", "iso", "bw", "mu"]

# Quantities whose search is parameterized by a protection level
K_QUANTITIES = ("a", "gamma", "psi", "psi-gd", "cut")


# ========== Graphs ==========

class GraphPayload(BaseModel):
    """A graph in edge-list form."""
    n: int = Field(..., ge=0, description="Number of vertices, labelled 0..n-1")
    edges: List[Tuple[int, int]] = Field(default_factory=list)
    labels: Optional[List[str]] = None

    def to_graph(self) -> Graph:
        """
        Raises:
            InputError: On out-of-range endpoints, self-loops or repeated edges
        """
        return build_graph(self.n, self.edges, self.labels)

    @classmethod
    def from_graph(cls, graph: Graph) -> "GraphPayload":
        return cls(
            n=graph.n,
            edges=list(graph.edges),
            labels=list(graph.labels) if graph.labels is not None else None,
        )


class GenerateRequest(BaseModel):
    """Request for a named generator, e.g. kind="family-h", params=[3, 0]."""
    kind: str = Field(..., description="complete | cycle | path | star | hypercube | petersen | family-h | random")
    params: List[float] = Field(default_factory=list)


class ProductRequest(BaseModel):
    """Request for the Cartesian product first □ second."""
    first: GraphPayload
    second: GraphPayload


# ========== Queries ==========

class SolveRequest(BaseModel):
    """Request for one exact quantity."""
    graph: GraphPayload
    quantity: Quantity
    k: Optional[int] = None
    r: Optional[int] = Field(None, ge=2)
    is_global: bool = Field(False, description="Promote a to gamma and psi to psi-gd")
    budget: Optional[int] = Field(None, ge=1, description="Node budget (defaults to SEARCH_BUDGET)")
    threads: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def _check_parameters(self):
        if self.quantity in K_QUANTITIES and self.k is None:
            raise ValueError(f"quantity '{self.quantity}' needs k")
        if self.quantity == "cut" and self.r is None:
            raise ValueError("quantity 'cut' needs r")
        return self


class BoundsRequest(BaseModel):
    """Request for the closed-form bound reports at one protection level."""
    graph: GraphPayload
    k: int
    r: Optional[int] = Field(None, ge=2)
    budget: Optional[int] = Field(None, ge=1)


class BoundsResponse(BaseModel):
    """The four bound families evaluated on one graph."""
    defensive: BoundReport
    global_defensive: BoundReport
    cut: Optional[BoundReport] = None
    spectral: Optional[BoundReport] = None


class BisectRequest(BaseModel):
    graph: GraphPayload
    k: int
    budget: Optional[int] = Field(None, ge=1)
    threads: Optional[int] = Field(None, ge=1)


class BisectResponse(BaseModel):
    """Alliance bisection together with the spectral no-bisection certificate."""
    result: SolveResult
    nobisection: Optional[str] = Field(None, description="Spectral certificate that no bisection exists")


# ========== Verification ==========

class VerifyRequest(BaseModel):
    """Synchronous verification of one graph."""
    graph: GraphPayload
    name: str = "graph"
    k_min: Optional[int] = None
    k_max: Optional[int] = None
    budget: Optional[int] = Field(None, ge=1, description="Node budget per solve (defaults to VERIFY_BUDGET)")

    @model_validator(mode="after")
    def _check_range(self):
        if (self.k_min is None) != (self.k_max is None):
            raise ValueError("k_min and k_max must be given together")
        if self.k_min is not None and self.k_min > self.k_max:
            raise ValueError(f"empty k range {self.k_min}..{self.k_max}")
        return self

    @property
    def k_range(self) -> Optional[Tuple[int, int]]:
        return (self.k_min, self.k_max) if self.k_min is not None else None


class CorpusRequest(BaseModel):
    """Corpus verification dispatched to the worker."""
    names: Optional[List[str]] = Field(None, description="Restrict to these corpus entries")
    budget: Optional[int] = Field(None, ge=1)
    threads: Optional[int] = Field(None, ge=1)


class TaskStatusResponse(BaseModel):
    """State of a queued corpus verification."""
    task_id: str
    state: str
    progress: int = Field(0, ge=0, le=100)
    message: str
    result: Optional[Dict[str, Any]] = None
