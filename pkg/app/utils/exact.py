"""
Exact arithmetic helpers.

Integer-input bounds are evaluated with Fraction and integer floor/ceil only.
The single floating input (the algebraic connectivity) enters through
rounded_mu() and the guard-banded floor/ceil helpers.
"""

import math
from fractions import Fraction
from typing import Callable, Tuple, Union

Rational = Union[int, Fraction]


def ceil_div(a: int, b: int) -> int:
    """ceil(a / b) for integers, b > 0."""
    return -((-a) // b)


def ceil_q(value: Rational) -> int:
    return math.ceil(Fraction(value))


def format_rational(value: Rational) -> str:
    """Render a rational as "p/q" (integers as "p/1")."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def rounded_mu(mu: float, decimals: int) -> Fraction:
    """The eigenvalue rounded to a fixed number of decimals, as an exact rational."""
    rounded = Fraction(f"{mu:.{decimals}f}")
    return max(rounded, Fraction(0))


def guarded_floor(
    expression: Callable[[Fraction], Fraction],
    mu: Fraction,
    band: Fraction,
    unsafe_step: int
) -> Tuple[int, bool]:
    """
    floor(expression(mu)) together with a marginal flag.

    The flag is raised when moving mu by the guard band in the unsafe direction
    (the direction that would make the bound stronger than the true one)
    changes the result.

    Args:
        expression: Bound as a function of mu
        mu: Rounded mu
        band: Guard band width
        unsafe_step: +1 or -1, direction of mu that weakens the truth

    Returns:
        (value, marginal)
    """
    value = math.floor(expression(mu))
    shifted = math.floor(expression(mu + unsafe_step * band))
    return value, shifted != value


def guarded_ceil(
    expression: Callable[[Fraction], Fraction],
    mu: Fraction,
    band: Fraction,
    unsafe_step: int
) -> Tuple[int, bool]:
    """ceil counterpart of guarded_floor()."""
    value = math.ceil(expression(mu))
    shifted = math.ceil(expression(mu + unsafe_step * band))
    return value, shifted != value


def max_root_loop(n: int, k: int) -> int:
    """
    Largest integer rho >= 0 with rho * (rho + k) <= n, found by counting up.

    For n >= 0 the admissible rho form an interval starting at 0, so the loop
    stops at its right end, which is floor((sqrt(k^2 + 4n) - k) / 2).
    """
    rho = 0
    while (rho + 1) * (rho + 1 + k) <= n:
        rho += 1
    return rho


def max_root_isqrt(n: int, k: int) -> int:
    """Closed form floor((sqrt(k^2 + 4n) - k) / 2) in integer arithmetic."""
    return (math.isqrt(k * k + 4 * n) - k) // 2
