"""
Graph construction API routes.
Endpoints for named generators and Cartesian products.
"""

from fastapi import APIRouter

from app.schemas.graph import GenerateRequest, GraphPayload, ProductRequest
from app.services.graph_builder import cartesian_product, generate

router = APIRouter(prefix="/graphs", tags=["Graphs"])


@router.post("/generate", response_model=GraphPayload)
async def generate_graph(request: GenerateRequest):
    """
    Build a named graph, e.g. {"kind": "family-h", "params": [3, 0]}.
    """
    return GraphPayload.from_graph(generate(request.kind, *request.params))


@router.post("/product", response_model=GraphPayload)
async def product_graph(request: ProductRequest):
    """
    Cartesian product first □ second; vertex (u, v) is numbered u * n2 + v.
    """
    product = cartesian_product(request.first.to_graph(), request.second.to_graph())
    return GraphPayload.from_graph(product)
