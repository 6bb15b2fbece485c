"""
Exact solver API routes.
Endpoints for single quantities, bound reports and alliance bisections.
"""

from typing import Any, Dict

from fastapi import APIRouter

from app.schemas.graph import BisectRequest, BisectResponse, BoundsRequest, SolveRequest
from app.services import queries

router = APIRouter(tags=["Solvers"])


@router.post("/solve")
def solve(request: SolveRequest) -> Dict[str, Any]:
    """
    Compute one exact quantity (a, gamma, dom, psi, psi-gd, cut, iso, bw, mu).

    Rationals are returned as "p/q" strings and witnesses as sorted vertex
    lists. A value of null means no alliance or partition exists.
    """
    result = queries.solve_quantity(
        request.graph.to_graph(),
        request.quantity,
        k=request.k,
        r=request.r,
        is_global=request.is_global,
        budget=request.budget,
        threads=request.threads,
    )
    return result.model_dump(mode="json")


@router.post("/bounds")
def bounds(request: BoundsRequest) -> Dict[str, Any]:
    """
    Evaluate the defensive, global, cut and spectral bound families.
    """
    bundle = queries.bounds_bundle(request.graph.to_graph(), request.k, r=request.r, budget=request.budget)
    return bundle.model_dump(mode="json")


@router.post("/bisect")
def bisect(request: BisectRequest) -> Dict[str, Any]:
    """
    Search a bisection into two global defensive k-alliances; when none
    exists the spectral no-bisection certificate is attached if it applies.
    """
    result, message = queries.bisect(
        request.graph.to_graph(), request.k, budget=request.budget, threads=request.threads
    )
    return BisectResponse(result=result, nobisection=message).model_dump(mode="json")
