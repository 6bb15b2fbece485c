"""
Laplacian construction and algebraic connectivity.
"""

import logging
from typing import Optional

import networkx as nx
import numpy as np

from app.config import settings
from app.models.graph import Graph
from app.schemas.results import SpectralResult
from app.services.graph_builder import to_networkx
from app.utils.exceptions import InputError, NumericError

logger = logging.getLogger(__name__)


def laplacian(graph: Graph) -> np.ndarray:
    """L = D - A as an integer matrix."""
    matrix = np.zeros((graph.n, graph.n), dtype=np.int64)
    for u, v in graph.edges:
        matrix[u, v] = matrix[v, u] = -1
    matrix[np.diag_indices(graph.n)] = graph.degrees
    return matrix


def is_connected(graph: Graph) -> bool:
    if graph.n == 0:
        return False
    return nx.is_connected(to_networkx(graph))


def laplacian_spectrum(graph: Graph, tol: Optional[float] = None) -> np.ndarray:
    """
    Sorted Laplacian eigenvalues from a full symmetric eigendecomposition.

    Raises:
        NumericError: If an eigenpair residual or the trace check exceeds tol
    """
    tol = settings.SPECTRAL_TOL if tol is None else tol
    values, _ = _decompose(graph, tol)
    return values


def _decompose(graph: Graph, tol: float):
    matrix = laplacian(graph).astype(np.float64)
    try:
        values, vectors = np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc

    scale = max(1.0, float(max(graph.degrees, default=0)))
    residual = float(np.max(np.linalg.norm(matrix @ vectors - vectors * values, axis=0))) if graph.n else 0.0
    if residual > tol * scale * max(1, graph.n):
        raise NumericError(f"eigenpair residual {residual:.3e} exceeds tolerance {tol:.1e}")
    if abs(float(values.sum()) - 2 * graph.m) > graph.n * tol * scale * max(1, graph.n):
        raise NumericError(f"spectrum trace {values.sum():.12g} differs from 2m = {2 * graph.m}")
    return values, residual


def algebraic_connectivity(graph: Graph, tol: Optional[float] = None) -> SpectralResult:
    """
    Second-smallest Laplacian eigenvalue mu.

    Args:
        graph: Graph with at least two vertices
        tol: Accuracy target (defaults to settings.SPECTRAL_TOL)

    Returns:
        SpectralResult with mu clamped at 0, the residual and the spectrum

    Raises:
        InputError: If n < 2 or tol <= 0
        NumericError: On eigensolver failure, or if mu disagrees with the
            connectivity scan
    """
    tol = settings.SPECTRAL_TOL if tol is None else tol
    if graph.n < 2:
        raise InputError(f"algebraic connectivity needs n >= 2, got n={graph.n}")
    if tol <= 0:
        raise InputError(f"tolerance must be positive, got {tol}")

    values, residual = _decompose(graph, tol)
    mu = max(0.0, float(values[1]))
    connected = is_connected(graph)

    # mu vanishes exactly on disconnected graphs
    zero = mu <= tol * max(1, graph.n)
    if zero == connected:
        raise NumericError(
            f"mu = {mu:.3e} is inconsistent with the graph being "
            f"{'connected' if connected else 'disconnected'}"
        )
    if zero:
        mu = 0.0

    logger.debug("mu=%.12g residual=%.2e n=%d", mu, residual, graph.n)
    return SpectralResult(
        mu=mu,
        residual=residual,
        eigenvalues=[max(0.0, float(x)) if abs(x) <= tol * graph.n else float(x) for x in values],
        connected=connected,
        tol=tol,
    )
