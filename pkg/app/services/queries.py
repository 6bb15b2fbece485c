"""
Quantity dispatch shared by the CLI and the HTTP API.
"""

import logging
from typing import Optional, Tuple, Union

from app.models.graph import Graph
from app.schemas.graph import K_QUANTITIES, BoundsResponse
from app.schemas.results import IsoResult, SolveResult, SpectralResult
from app.services import bounds, solvers, spectral
from app.utils.exceptions import InputError

logger = logging.getLogger(__name__)

QUANTITIES = ("a", "gamma", "dom", "psi", "psi-gd", "cut", "iso", "bw", "mu")

_GLOBAL_FORM = {"a": "gamma", "psi": "psi-gd"}


def solve_quantity(
    graph: Graph,
    quantity: str,
    k: Optional[int] = None,
    r: Optional[int] = None,
    is_global: bool = False,
    budget: Optional[int] = None,
    threads: Optional[int] = None
) -> Union[SolveResult, IsoResult, SpectralResult]:
    """
    Compute one quantity by its selector.

    Args:
        graph: Input graph
        quantity: a | gamma | dom | psi | psi-gd | cut | iso | bw | mu
        k: Protection level (required by a, gamma, psi, psi-gd, cut)
        r: Block count (required by cut)
        is_global: Promote a to gamma and psi to psi-gd
        budget: Node budget
        threads: Worker threads

    Returns:
        SolveResult, IsoResult (iso) or SpectralResult (mu)

    Raises:
        InputError: Unknown selector or a missing parameter
    """
    if quantity not in QUANTITIES:
        raise InputError(f"unknown quantity '{quantity}', expected one of {', '.join(QUANTITIES)}")
    if is_global:
        quantity = _GLOBAL_FORM.get(quantity, quantity)
    if quantity in K_QUANTITIES and k is None:
        raise InputError(f"quantity '{quantity}' needs --k")

    logger.info("solving %s on n=%d m=%d (k=%s, r=%s)", quantity, graph.n, graph.m, k, r)
    if quantity in ("a", "gamma"):
        return solvers.alliance_number(graph, k, is_global=quantity == "gamma", budget=budget, threads=threads)
    if quantity in ("psi", "psi-gd"):
        return solvers.partition_number(graph, k, is_global=quantity == "psi-gd", budget=budget, threads=threads)
    if quantity == "cut":
        if r is None:
            raise InputError("quantity 'cut' needs --r")
        return solvers.min_cut_partition(graph, k, r, budget=budget, threads=threads)
    if quantity == "dom":
        return solvers.domination_number(graph, budget=budget, threads=threads)
    if quantity == "iso":
        return solvers.isoperimetric_number(graph, budget=budget, threads=threads)
    if quantity == "bw":
        return solvers.bipartition_width(graph, budget=budget, threads=threads)
    return spectral.algebraic_connectivity(graph)


def bounds_bundle(
    graph: Graph,
    k: int,
    r: Optional[int] = None,
    budget: Optional[int] = None
) -> BoundsResponse:
    """
    Evaluate every bound family on a graph, feeding in exact a_k^d and
    gamma_k^d so the entries that depend on them are applicable.

    The spectral family needs n >= 2; the cut family needs r.
    """
    if graph.n == 0:
        raise InputError("bounds need a nonempty graph")
    n, m, delta, big_delta = graph.n, graph.m, graph.min_degree, graph.max_degree

    a = solvers.alliance_number(graph, k, budget=budget)
    gamma = solvers.alliance_number(graph, k, is_global=True, budget=budget)
    a_exact = a.value if a.exact else None
    gamma_exact = gamma.value if gamma.exact else None

    cut_report = None
    if r is not None:
        cut_report = bounds.bounds_cut(n, m, delta, k, r, gamma_kd=gamma_exact)

    spectral_report = None
    if n >= 2:
        iso = solvers.isoperimetric_number(graph, budget=budget)
        mu = spectral.algebraic_connectivity(graph).mu
        i_exact = iso.value if iso.exact else None
        spectral_report = bounds.bounds_spectral(n, m, delta, big_delta, k, i_exact, mu, a=a_exact)

    return BoundsResponse(
        defensive=bounds.bounds_defensive(n, m, delta, k, a=a_exact),
        global_defensive=bounds.bounds_global(n, delta, big_delta, k, gamma=gamma_exact),
        cut=cut_report,
        spectral=spectral_report,
    )


def bisect(
    graph: Graph,
    k: int,
    budget: Optional[int] = None,
    threads: Optional[int] = None
) -> Tuple[SolveResult, Optional[str]]:
    """
    Alliance bisection and, when no bisection exists, the spectral
    certificate explaining it (None when the bound is silent or n < 2).
    """
    result = solvers.alliance_bisection(graph, k, budget=budget, threads=threads)
    message = None
    if result.value is None and graph.n >= 2:
        message = bounds.nobisection_message(graph.n, graph.m, k, spectral.algebraic_connectivity(graph).mu)
    return result, message
