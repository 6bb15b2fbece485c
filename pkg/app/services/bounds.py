"""
Closed-form bounds on alliance numbers, partition numbers and cuts.

Integer inputs are evaluated in exact integer / Fraction arithmetic. The
algebraic connectivity is the only floating input: it is rounded to
settings.MU_DECIMALS decimals and every floor/ceil taken over it is checked
against a guard band, marking the entry marginal when the band moves it.
"""

from fractions import Fraction
from typing import Callable, List, Optional, Union

from app.config import settings
from app.models.graph import Graph
from app.schemas.bounds import BoundEntry, BoundReport
from app.utils.exact import ceil_div, ceil_q, guarded_ceil, guarded_floor, max_root_loop, rounded_mu

Rational = Union[int, Fraction]

# Rounded mu can only be trusted from below: an overestimate makes every
# spectral bound here stronger than the true one.
_MU_UNSAFE_STEP = -1


def _entry(name: str, value, source: str, hypothesis: Optional[str] = None,
           applicable: bool = True, marginal: bool = False) -> BoundEntry:
    return BoundEntry(
        name=name,
        value=value if applicable else None,
        applicable=applicable,
        hypothesis=hypothesis,
        source=source,
        marginal=marginal,
    )


def bounds_defensive(n: int, m: int, delta: int, k: int, a: Optional[int] = None) -> BoundReport:
    """
    Bounds on a_k^d and psi_k^d.

    Args:
        n: Order
        m: Size
        delta: Minimum degree
        k: Protection level
        a: Exact a_k^d, when known, for the product bound n >= a * psi

    Returns:
        BoundReport with a_lower, psi_upper and psi_upper_from_a
    """
    s = delta + k + 2
    entries: List[BoundEntry] = [
        _entry("a_lower", ceil_div(s, 2), "a >= ceil((delta+k+2)/2)", applicable=s > 0),
    ]

    if s > 0:
        divisor = s if (delta + k) % 2 == 0 else s + 1
        psi_upper = (2 * n) // divisor
    else:
        psi_upper = None
    entries.append(_entry(
        "psi_upper", psi_upper,
        "psi <= floor(2n/(delta+k+2)) if delta+k even, floor(2n/(delta+k+3)) if odd",
        hypothesis="partitionable into defensive k-alliances",
        applicable=s > 0,
    ))
    entries.append(_entry(
        "psi_upper_from_a", n // a if a else None, "a * psi <= n",
        hypothesis="partitionable into defensive k-alliances",
        applicable=bool(a),
    ))

    return BoundReport(
        family="defensive",
        inputs={"n": n, "m": m, "delta": delta, "k": k, "a": a},
        entries=entries,
    )


def bounds_global(
    n: int,
    delta: int,
    max_degree: int,
    k: int,
    gamma: Optional[int] = None
) -> BoundReport:
    """
    Bounds on gamma_k^d and psi_k^gd.

    psi_gd_sqrt is the largest rho with rho * (rho + k) <= n, found by an
    integer loop; it equals floor((sqrt(k^2 + 4n) - k) / 2).
    """
    coarse = (max_degree - k) // 2 + 1
    partitionable = "partitionable into global defensive k-alliances"

    entries = [
        _entry("gamma_lower", ceil_div(n, coarse) if coarse > 0 else None,
               "gamma >= ceil(n/(floor((Delta-k)/2)+1))", applicable=coarse > 0),
        _entry("psi_gd_coarse", coarse, "psi_gd <= floor((Delta-k)/2)+1",
               hypothesis=partitionable, applicable=coarse > 0),
        _entry("psi_gd_sqrt", max_root_loop(n, k), "psi_gd <= floor((sqrt(k^2+4n)-k)/2)",
               hypothesis=partitionable),
        _entry("psi_gd_degree", (delta - k + 2) // 2, "psi_gd <= floor((delta-k+2)/2)",
               hypothesis=partitionable),
        _entry("psi_gd_from_gamma", n // gamma if gamma else None, "gamma * psi_gd <= n",
               hypothesis=partitionable, applicable=bool(gamma)),
        _entry("gamma_plus_psi", Fraction(n + 4, 2), "gamma + psi_gd <= (n+4)/2",
               hypothesis="k >= 1-delta, psi_gd >= 2, gamma >= 2",
               applicable=k >= 1 - delta),
    ]

    return BoundReport(
        family="global",
        inputs={"n": n, "delta": delta, "Delta": max_degree, "k": k, "gamma": gamma},
        entries=entries,
    )


def bounds_cut(
    n: int,
    m: int,
    delta: int,
    k: int,
    r: int,
    gamma_kd: Optional[int] = None
) -> BoundReport:
    """
    Bounds on C_(r,k)^gd, the equal-cardinality block count bound and the
    two necessary conditions for a partition into r global defensive
    k-alliances.

    nonpartitionable is True when either condition rules the partition out.
    """
    pairs = r * (r - 1)
    partition = f"partition into {r} global defensive k-alliances"
    nonpartitionable = (
        k > Fraction(2 * m - pairs * (delta + 2), n + pairs)
        or k > Fraction(2 * (m - r * r * (r - 1)), n + 2 * pairs)
    )

    entries = [
        _entry("cut_lower_1", pairs * gamma_kd // 2 if gamma_kd else None,
               "C >= r(r-1) gamma / 2", hypothesis=partition, applicable=bool(gamma_kd)),
        _entry("cut_lower_2", pairs * (r + k) // 2, "C >= r(r-1)(r+k) / 2", hypothesis=partition),
        _entry("cut_upper", Fraction(2 * m - n * k, 4), "C <= (2m-nk)/4", hypothesis=partition),
        _entry("equal_card_r_max", Fraction(2 * (m + n) - k * n, 2 * n), "r <= (2(m+n)-kn)/(2n)",
               hypothesis="partition into r global defensive k-alliances of equal cardinality"),
        _entry("nonpartitionable", nonpartitionable,
               "k > (2m-r(r-1)(delta+2))/(n+r(r-1)) or k > 2(m-r^2(r-1))/(n+2r(r-1))"),
        _entry("induced_size_lower", Fraction(gamma_kd * (r + k - 1), 2) if gamma_kd else None,
               "|E(<V_i>)| >= gamma (r+k-1) / 2", hypothesis=partition, applicable=bool(gamma_kd)),
    ]

    return BoundReport(
        family="cut",
        inputs={"n": n, "m": m, "delta": delta, "k": k, "r": r, "gamma": gamma_kd},
        entries=entries,
    )


def bisection_width_lower(n: int, mu: Fraction) -> Fraction:
    """ceil argument of the spectral bisection bound: n mu / 4 (n even), (n^2-1) mu / (4n) (n odd)."""
    if n % 2 == 0:
        return n * mu / 4
    return (n * n - 1) * mu / (4 * n)


def bounds_spectral(
    n: int,
    m: int,
    delta: int,
    max_degree: int,
    k: int,
    i: Optional[Rational],
    mu: float,
    a: Optional[int] = None
) -> BoundReport:
    """
    Isoperimetric and spectral bounds.

    Args:
        n, m, delta, max_degree, k: Graph invariants and protection level
        i: Exact isoperimetric number, or None when unknown (the entries through i
            are then not applicable)
        mu: Algebraic connectivity (floating)
        a: Exact a_k^d, when known, for the defensive non-partitionability test

    Returns:
        BoundReport; entries derived from mu carry a marginal flag
    """
    i = None if i is None else Fraction(i)
    mu_q = rounded_mu(mu, settings.MU_DECIMALS)
    band = Fraction(repr(settings.GUARD_BAND))

    def guarded(expression: Callable[[Fraction], Fraction], rounding: Callable):
        return rounding(expression, mu_q, band, _MU_UNSAFE_STEP)

    psi_gd_mu, psi_marginal = guarded(lambda x: max_degree + 1 - x / 2 - k, guarded_floor)
    a_mu_lower, a_marginal = guarded(lambda x: (x + 2 * (k + 1)) / 2, guarded_ceil)
    bw_lower, bw_marginal = guarded(lambda x: bisection_width_lower(n, x), guarded_ceil)

    cut_floor = (2 * m - n * k) // 4
    global_limit = 2 * (max_degree - 1 - k)
    mu_blocks = mu_q > global_limit
    mu_blocks_marginal = (mu_q - band > global_limit) != mu_blocks

    entries = [
        _entry("iso_upper_if_partitionable", Fraction(2 * m - n * k, 2 * n), "i <= (2m-nk)/(2n)",
               hypothesis="partition into r >= 2 global defensive k-alliances with blocks of size <= n/2"),
        _entry("psi_gd_iso", max_degree + 1 - i - k if i is not None else None, "psi_gd <= Delta+1-i-k",
               hypothesis="psi_gd >= 2", applicable=i is not None),
        _entry("a_iso_lower", i + k + 1 if i is not None else None, "a >= i+k+1",
               hypothesis="psi >= 2", applicable=i is not None),
        _entry("psi_gd_mu", psi_gd_mu, "psi_gd <= floor(Delta+1-mu/2-k)",
               hypothesis="psi_gd >= 2", marginal=psi_marginal),
        _entry("a_mu_lower", a_mu_lower, "a >= ceil((mu+2(k+1))/2)",
               hypothesis="psi >= 2", marginal=a_marginal),
        _entry("bw_lower", bw_lower, "bw >= ceil(n mu/4) (n even), ceil((n^2-1) mu/(4n)) (n odd)",
               marginal=bw_marginal),
        _entry("nobisection", cut_floor < bw_lower, "floor((2m-nk)/4) < bw lower bound",
               marginal=bw_marginal),
        _entry("mu_nonpartitionable", mu_blocks, "mu > 2(Delta-1-k) rules out r >= 2 global blocks",
               marginal=mu_blocks_marginal),
        _entry("mu_nonpartitionable_defensive", a < a_mu_lower if a else None,
               "a < ceil((mu+2(k+1))/2) rules out r >= 2 defensive blocks",
               applicable=bool(a), marginal=a_marginal),
    ]

    return BoundReport(
        family="spectral",
        inputs={
            "n": n, "m": m, "delta": delta, "Delta": max_degree, "k": k,
            "i": i, "mu": mu_q, "a": a,
        },
        entries=entries,
    )


def nobisection_message(n: int, m: int, k: int, mu: float) -> Optional[str]:
    """Human-readable no-bisection certificate, or None when the bound is silent."""
    mu_q = rounded_mu(mu, settings.MU_DECIMALS)
    bw_lower = ceil_q(bisection_width_lower(n, mu_q))
    cut_floor = (2 * m - n * k) // 4
    if cut_floor < bw_lower:
        return f"no-bisection bound: {cut_floor} < {bw_lower}"
    return None


def partition_search_upper(graph: Graph, k: int, is_global: bool) -> int:
    """
    Least applicable upper bound on psi_k^d (or psi_k^gd), used as the first
    candidate block count of the exact partition search.
    """
    n, delta = graph.n, graph.min_degree
    if not is_global:
        report = bounds_defensive(n, graph.m, delta, k)
        candidates = [n, report.value("psi_upper")]
    else:
        report = bounds_global(n, delta, graph.max_degree, k)
        candidates = [
            n,
            report.value("psi_gd_coarse"),
            report.value("psi_gd_sqrt"),
            report.value("psi_gd_degree"),
        ]
    return max(1, min(c for c in candidates if c is not None))
