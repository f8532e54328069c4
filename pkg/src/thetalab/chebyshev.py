"""First-kind Chebyshev polynomials: evaluation, coefficients, growth floor."""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "cheb_eval_recurrence",
    "cheb_eval_closed",
    "cheb_coefficients",
    "cheb_lower_bound",
    "MAX_EXACT_DEGREE",
]

# Largest degree whose monomial coefficients still fit a signed 64-bit int.
MAX_EXACT_DEGREE = 63


def _check_degree(g: int, odd: bool = False) -> None:
    if not isinstance(g, int) or g < 1:
        raise ValueError(f"degree must be a positive integer, got {g!r}")
    if odd and g % 2 == 0:
        raise ValueError(f"degree must be odd, got {g}")


def cheb_eval_recurrence(g: int, x: float) -> float:
    """Three-term recurrence, accumulated in 80-bit extended precision.

    The recurrence is well conditioned just above x = 1, exactly where the
    closed form loses digits, so this is the reference evaluation path.
    """
    _check_degree(g)
    xe = np.longdouble(x)
    prev = np.longdouble(1.0)
    cur = xe
    for _ in range(g - 1):
        prev, cur = cur, 2.0 * xe * cur - prev
    return float(cur)


def cheb_eval_closed(g: int, x: float) -> float:
    """Closed form 0.5 * ((x - sqrt(x^2-1))^g + (x + sqrt(x^2-1))^g) for x >= 1.

    x^2 - 1 is formed as (x-1)(x+1) and, away from 1, the small branch is
    computed as 1 / (x + sqrt(x^2-1)) to dodge cancellation.
    """
    _check_degree(g)
    if x < 1.0:
        raise ValueError(f"closed form requires x >= 1, got {x}")
    root = math.sqrt((x - 1.0) * (x + 1.0))
    big = x + root
    small = 1.0 / big if x >= 1.0 + 1e-8 else x - root
    return 0.5 * (small**g + big**g)


def cheb_coefficients(g: int) -> list[int]:
    """Exact monomial coefficients of T_g, constant term first; g <= 63."""
    _check_degree(g)
    if g > MAX_EXACT_DEGREE:
        raise ValueError(f"exact coefficients limited to degree {MAX_EXACT_DEGREE}")
    prev = [1]
    cur = [0, 1]
    for _ in range(g - 1):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def cheb_lower_bound(g: int, x: float) -> float:
    """0.5 * (1 + sqrt(x^2-1))^g, a floor for T_g(x) when g is odd and x >= 1."""
    _check_degree(g, odd=True)
    if x < 1.0:
        raise ValueError(f"lower bound requires x >= 1, got {x}")
    root = math.sqrt((x - 1.0) * (x + 1.0))
    return 0.5 * (1.0 + root) ** g
