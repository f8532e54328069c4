"""Closed-form bound evaluators and the inequality chain they feed.

Everything here is an evaluator or a checker: theta values always enter as
certified brackets from :mod:`thetalab.theta`, and an inequality only counts
as holding when it holds at the unfavourable bracket ends plus explicit
slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph, GraphError, OddGirth, complement, odd_girth
from .theta import DEFAULT_TOL, ThetaResult, solve_theta

__all__ = [
    "girth_excess",
    "alon_kahale_bound",
    "GirthBoundReport",
    "girth_theta_bound_check",
    "cycle_theta_exact",
    "cycle_theta_asymptotic",
    "ProductIdentityReport",
    "vertex_transitive_product_check",
    "RamseyBoundInputs",
    "GBoundReport",
    "derive_g_bound",
    "InequalityAuditReport",
    "elementary_inequality_audit",
    "DEFAULT_G_CAP",
]

DEFAULT_G_CAP = 99


def _check_odd(g: int, minimum: int = 1) -> None:
    if not isinstance(g, int) or g < minimum or g % 2 == 0:
        raise ValueError(f"need an odd integer >= {minimum}, got {g!r}")


def girth_excess(n: int, g: int) -> float:
    """0.5 * ((2n - 2)^(1/g) - 1)^2, the excess over 2 in the odd-girth bound.

    The root is taken in extended precision; the few-ulp rounding of the
    final division is far below every slack used downstream.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    _check_odd(g)
    base = np.longdouble(2 * n - 2)
    root = np.exp(np.log(base) / np.longdouble(g))
    return float(0.5 * (root - 1.0) ** 2)


def alon_kahale_bound(n: int, g: int) -> float:
    """Comparison value 1 + (n - 1)^(1/g); strong for small g, weak for large."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    _check_odd(g)
    return float(1.0 + np.exp(np.log(np.longdouble(n - 1)) / np.longdouble(g)))


@dataclass(frozen=True)
class GirthBoundReport:
    n: int
    g: int
    epsilon: float
    paper_bound: float
    alon_kahale: float
    theta_bracket: tuple[float, float]
    holds: bool

    def to_report(self) -> dict:
        return {
            "n": self.n,
            "g": self.g,
            "epsilon": self.epsilon,
            "bound": self.paper_bound,
            "alon_kahale": self.alon_kahale,
            "theta_lower": self.theta_bracket[0],
            "theta_upper": self.theta_bracket[1],
            "holds": self.holds,
        }


def girth_theta_bound_check(
    graph: Graph,
    tol: float = DEFAULT_TOL,
    g_cap: int = DEFAULT_G_CAP,
) -> tuple[ThetaResult, OddGirth, list[GirthBoundReport]]:
    """For each odd g below the odd girth: theta(complement) <= 2 + excess.

    Returns the complement theta bracket, the odd girth, and one report per
    tested g.  Bipartite graphs have no odd cycle at all, so every odd g up
    to ``g_cap`` applies.
    """
    if graph.n > 64:
        raise GraphError(f"girth check is limited to n <= 64, got {graph.n}")
    girth, _ = odd_girth(graph, witness=False)
    theta = solve_theta(complement(graph), tol)
    bracket = (theta.lower, theta.upper)
    reports = []
    top = g_cap if girth.is_infinite else min(girth.value - 2, g_cap)
    for g in range(1, top + 1, 2):
        eps = girth_excess(graph.n, g)
        bound = 2.0 + eps
        holds = theta.upper <= bound + 3.0 * tol
        reports.append(
            GirthBoundReport(
                n=graph.n,
                g=g,
                epsilon=eps,
                paper_bound=bound,
                alon_kahale=alon_kahale_bound(graph.n, g),
                theta_bracket=bracket,
                holds=holds,
            )
        )
    return theta, girth, reports


def cycle_theta_exact(g: int) -> float:
    """theta of the complement of an odd cycle: 1 + sec(pi/g).

    This is external knowledge kept out of the SDP module on purpose, so the
    solver is never tested against itself.
    """
    _check_odd(g, minimum=3)
    return 1.0 + 1.0 / math.cos(math.pi / g)


def cycle_theta_asymptotic(g: int) -> float:
    """Second-order expansion 2 + pi^2 / (2 g^2) of the same quantity."""
    _check_odd(g, minimum=3)
    return 2.0 + math.pi**2 / (2.0 * g * g)


@dataclass(frozen=True)
class ProductIdentityReport:
    n: int
    theta: ThetaResult
    theta_complement: ThetaResult
    product_interval: tuple[float, float]
    holds: bool

    def to_report(self) -> dict:
        return {
            "n": self.n,
            "theta": self.theta.to_report(),
            "theta_complement": self.theta_complement.to_report(),
            "product_lower": self.product_interval[0],
            "product_upper": self.product_interval[1],
            "holds": self.holds,
        }


def vertex_transitive_product_check(
    graph: Graph, tol: float = DEFAULT_TOL
) -> ProductIdentityReport:
    """Interval check of theta(G) * theta(complement G) = n.

    Only meaningful for vertex-transitive inputs; the caller picks those.
    The product interval of the two brackets must straddle n.
    """
    if graph.n > 32:
        raise GraphError(f"product check is limited to n <= 32, got {graph.n}")
    t = solve_theta(graph, tol)
    tc = solve_theta(complement(graph), tol)
    interval = (t.lower * tc.lower, t.upper * tc.upper)
    holds = interval[0] <= graph.n + 1e-9 and graph.n <= interval[1] + 1e-9
    return ProductIdentityReport(graph.n, t, tc, interval, holds)


@dataclass(frozen=True)
class RamseyBoundInputs:
    """Colour count k and density surplus delta with n = (1 + delta) * 2^k integral."""

    k: int
    delta: float
    n: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"need k >= 1, got {self.k}")
        if not 0.0 < self.delta <= 1.0:
            raise ValueError(f"delta must lie in (0, 1], got {self.delta}")
        expected = (1.0 + self.delta) * 2.0**self.k
        if abs(expected - self.n) > 1e-6 or self.n != round(expected):
            raise ValueError(
                f"n must equal (1 + delta) * 2^k = {expected}, got {self.n}"
            )

    @classmethod
    def from_k_delta(cls, k: int, delta: float) -> "RamseyBoundInputs":
        n = (1.0 + delta) * 2.0**k
        if abs(n - round(n)) > 1e-9:
            raise ValueError(f"(1 + {delta}) * 2^{k} = {n} is not an integer")
        return cls(k=k, delta=delta, n=int(round(n)))


@dataclass(frozen=True)
class ChainStep:
    description: str
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs + 1e-12

    def to_report(self) -> dict:
        return {
            "description": self.description,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class GBoundReport:
    """The cycle-length cap 4 k^{3/2} / sqrt(delta) plus its derivation audit.

    ``sharp_cap`` is the tighter intermediate value log(2n-2) / log(1 + x)
    with x = sqrt(2 delta / k); the closing steps relax it to ``value``.
    """

    inputs: RamseyBoundInputs
    value: float
    x: float
    sharp_cap: float
    steps: list[ChainStep] = field(default_factory=list)

    def to_report(self) -> dict:
        return {
            "k": self.inputs.k,
            "delta": self.inputs.delta,
            "n": self.inputs.n,
            "value": self.value,
            "x": self.x,
            "sharp_cap": self.sharp_cap,
            "steps": [s.to_report() for s in self.steps],
        }


def derive_g_bound(inputs: RamseyBoundInputs) -> GBoundReport:
    """4 k^{3/2} delta^{-1/2} with every intermediate of the derivation exposed.

    The relaxation 2n - 2 <= 2^{2k} genuinely needs k >= 2 (or small delta);
    the audit reports it numerically instead of assuming it.
    """
    k, delta, n = inputs.k, inputs.delta, inputs.n
    value = 4.0 * k**1.5 / math.sqrt(delta)
    x = math.sqrt(2.0 * delta / k)
    sharp_cap = math.log(2.0 * n - 2.0) / math.log1p(x)
    steps = [
        ChainStep("x = sqrt(2 delta / k) stays within [0, 2]", x, 2.0),
        ChainStep("2^(x/2) <= 1 + x at x", 2.0 ** (x / 2.0), 1.0 + x),
        ChainStep("2n - 2 <= 2^(2k)", 2.0 * n - 2.0, 2.0 ** (2 * k)),
        ChainStep("sharp cap <= closed form", sharp_cap, value),
    ]
    return GBoundReport(inputs=inputs, value=value, x=x, sharp_cap=sharp_cap, steps=steps)


@dataclass(frozen=True)
class InequalityAuditReport:
    exp_margin: float
    exp_argmin: float
    power_margin: float
    power_argmin: float
    grid: int

    @property
    def holds(self) -> bool:
        return self.exp_margin >= 0.0 and self.power_margin >= 0.0

    def to_report(self) -> dict:
        return {
            "exp_half_delta_margin": self.exp_margin,
            "exp_half_delta_argmin": self.exp_argmin,
            "two_power_margin": self.power_margin,
            "two_power_argmin": self.power_argmin,
            "grid": self.grid,
            "holds": self.holds,
        }


def elementary_inequality_audit(grid: int = 100_000) -> InequalityAuditReport:
    """Grid sweep of exp(d/2) <= 1 + d on (0, 1] and 2^(x/2) <= 1 + x on [0, 2]."""
    deltas = np.linspace(0.0, 1.0, grid + 1)[1:]
    exp_margins = (1.0 + deltas) - np.exp(deltas / 2.0)
    i = int(np.argmin(exp_margins))
    xs = np.linspace(0.0, 2.0, grid + 1)
    power_margins = (1.0 + xs) - np.exp2(xs / 2.0)
    j = int(np.argmin(power_margins))
    return InequalityAuditReport(
        exp_margin=float(exp_margins[i]),
        exp_argmin=float(deltas[i]),
        power_margin=float(power_margins[j]),
        power_argmin=float(xs[j]),
        grid=grid,
    )
