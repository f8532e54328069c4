"""Edge colourings of complete graphs and the verification harness on them.

A colouring stores one colour id per unordered pair, in a flat triangular
array ranked by r(u, v) = v(v-1)/2 + u for u < v, so serialized colourings
are portable across runs and machines.
"""

from __future__ import annotations

import json
import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bounds import DEFAULT_G_CAP, girth_excess
from .graphs import (
    CycleWitness,
    Graph,
    GraphError,
    OddGirth,
    SearchResult,
    build_graph,
    complement,
    disjoint_union,
    independence_number,
    odd_girth,
    strong_product,
)
from .theta import DEFAULT_TOL, ThetaResult, solve_theta

__all__ = [
    "EdgeColouring",
    "MonoOddCycleReport",
    "PipelineClassReport",
    "PipelineReport",
    "BruteForceResult",
    "CapacityReport",
    "LocalSearchResult",
    "colour_class",
    "binary_colouring",
    "shortest_mono_odd_cycle",
    "theta_pipeline",
    "brute_force_L",
    "capacity_witness",
    "local_search_colouring",
    "worker_count",
]


def worker_count() -> int:
    """Worker cap from THETA_LAB_THREADS; 1 (sequential) when unset or bad."""
    raw = os.environ.get("THETA_LAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def pair_rank(u: int, v: int) -> int:
    """Rank of the unordered pair {u, v} with u < v."""
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


class EdgeColouring:
    """Total assignment of one of k colours to every edge of K_n."""

    __slots__ = ("n", "k", "_colours")

    def __init__(self, n: int, k: int, colours):
        if n < 2:
            raise GraphError(f"need n >= 2, got {n}")
        if not 1 <= k <= 255:
            raise GraphError(f"need 1 <= k <= 255, got {k}")
        arr = np.array(colours, dtype=np.uint8)
        want = n * (n - 1) // 2
        if arr.shape != (want,):
            raise GraphError(f"expected {want} colours for K_{n}, got shape {arr.shape}")
        if arr.size and int(arr.max()) >= k:
            raise GraphError(f"colour id {int(arr.max())} is not below k={k}")
        arr.flags.writeable = False
        self.n = n
        self.k = k
        self._colours = arr

    def colour_of(self, u: int, v: int) -> int:
        if u == v:
            raise GraphError("pairs must have distinct endpoints")
        return int(self._colours[pair_rank(u, v)])

    def colours_flat(self) -> np.ndarray:
        return self._colours

    def with_colour(self, u: int, v: int, colour: int) -> "EdgeColouring":
        arr = self._colours.copy()
        arr[pair_rank(u, v)] = colour
        return EdgeColouring(self.n, self.k, arr)

    def to_json(self) -> str:
        edges = [[u, v, self.colour_of(u, v)] for v in range(1, self.n) for u in range(v)]
        return json.dumps({"n": self.n, "k": self.k, "edges": edges})

    @classmethod
    def from_json(cls, text: str) -> "EdgeColouring":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid colouring JSON: {exc}") from None
        try:
            n, k, edges = int(data["n"]), int(data["k"]), data["edges"]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"colouring JSON missing field: {exc}") from None
        want = n * (n - 1) // 2
        arr = np.full(want, 255, dtype=np.uint16)
        for item in edges:
            u, v, c = int(item[0]), int(item[1]), int(item[2])
            if not (0 <= u < n and 0 <= v < n and u != v):
                raise GraphError(f"bad pair ({u}, {v})")
            arr[pair_rank(u, v)] = c
        if want and int(arr.max()) == 255 and k <= 255:
            missing = int(np.argmax(arr == 255))
            raise GraphError(f"colouring does not cover all pairs (rank {missing} missing)")
        return cls(n, k, arr.astype(np.uint8))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, EdgeColouring)
            and self.n == other.n
            and self.k == other.k
            and bool(np.array_equal(self._colours, other._colours))
        )

    def __repr__(self) -> str:
        return f"EdgeColouring(n={self.n}, k={self.k})"


def _pair_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    us = np.concatenate([np.arange(v) for v in range(1, n)]) if n > 1 else np.array([], dtype=int)
    vs = np.concatenate([np.full(v, v) for v in range(1, n)]) if n > 1 else np.array([], dtype=int)
    return us, vs


def colour_class(colouring: EdgeColouring, colour: int) -> Graph:
    """Graph on [n] holding exactly the edges of the given colour."""
    if not 0 <= colour < colouring.k:
        raise GraphError(f"colour {colour} is not below k={colouring.k}")
    us, vs = _pair_arrays(colouring.n)
    mask = colouring.colours_flat() == colour
    return build_graph(colouring.n, list(zip(us[mask].tolist(), vs[mask].tolist())))


def binary_colouring(k: int) -> EdgeColouring:
    """K_{2^k} coloured by the highest differing bit; every class is bipartite.

    Vertices are the integers 0 .. 2^k - 1 read as k-bit strings; the edge uv
    takes the position of the highest set bit of u XOR v, so colour class c
    is split by bit c into two independent sides.
    """
    if not 1 <= k <= 12:
        raise GraphError(f"binary colouring needs 1 <= k <= 12, got {k}")
    n = 1 << k
    us, vs = _pair_arrays(n)
    xd = np.bitwise_xor(us, vs).astype(np.float64)
    colours = (np.frexp(xd)[1] - 1).astype(np.uint8)
    return EdgeColouring(n, k, colours)


@dataclass(frozen=True)
class MonoOddCycleReport:
    """Shortest odd cycle over the colour classes; length None when all bipartite."""

    length: int | None
    colour: int | None
    witness: CycleWitness | None
    class_odd_girths: tuple[OddGirth, ...]

    def to_report(self) -> dict:
        return {
            "length": self.length,
            "colour": self.colour,
            "witness": list(self.witness.vertices) if self.witness else None,
            "class_odd_girths": [g.value for g in self.class_odd_girths],
        }


def shortest_mono_odd_cycle(colouring: EdgeColouring) -> MonoOddCycleReport:
    """Minimum odd girth over colour classes, ties broken by lower colour id."""
    girths: list[OddGirth] = []
    best_len: int | None = None
    best_colour: int | None = None
    for c in range(colouring.k):
        girth, _ = odd_girth(colour_class(colouring, c), witness=False)
        girths.append(girth)
        if girth.value is not None and (best_len is None or girth.value < best_len):
            best_len, best_colour = girth.value, c
    witness = None
    if best_colour is not None:
        _, witness = odd_girth(colour_class(colouring, best_colour), witness=True)
    return MonoOddCycleReport(best_len, best_colour, witness, tuple(girths))


@dataclass(frozen=True)
class PipelineClassReport:
    colour: int
    theta_complement: ThetaResult
    class_odd_girth: OddGirth
    g_used: int
    epsilon: float
    girth_bound_holds: bool

    def to_report(self) -> dict:
        return {
            "colour": self.colour,
            "theta_complement": self.theta_complement.to_report(),
            "odd_girth": self.class_odd_girth.value,
            "g_used": self.g_used,
            "epsilon": self.epsilon,
            "girth_bound_holds": self.girth_bound_holds,
        }


@dataclass(frozen=True)
class PipelineReport:
    """Product-of-thetas replay: n <= prod theta(complement of class)."""

    n: int
    k: int
    classes: list[PipelineClassReport]
    product_interval: tuple[float, float]
    slack: float
    holds: bool

    def to_report(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "classes": [c.to_report() for c in self.classes],
            "product_lower": self.product_interval[0],
            "product_upper": self.product_interval[1],
            "slack": self.slack,
            "holds": self.holds,
        }


def theta_pipeline(
    colouring: EdgeColouring,
    tol: float = DEFAULT_TOL,
    g_cap: int = DEFAULT_G_CAP,
) -> PipelineReport:
    """Solve theta(complement) per colour class and check the product chain.

    Also re-checks the per-class odd-girth bound theta <= 2 + excess at the
    largest usable odd g (odd girth minus 2; ``g_cap`` for bipartite classes).
    """
    n, k = colouring.n, colouring.k
    if n > 48:
        raise GraphError(f"theta_pipeline is limited to n <= 48, got {n}")
    classes = [colour_class(colouring, c) for c in range(k)]
    workers = min(worker_count(), k)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            thetas = list(pool.map(lambda g: solve_theta(complement(g), tol), classes))
    else:
        thetas = [solve_theta(complement(g), tol) for g in classes]
    entries = []
    prod_lo, prod_hi = 1.0, 1.0
    for c, (cls, theta) in enumerate(zip(classes, thetas)):
        girth, _ = odd_girth(cls, witness=False)
        g_used = g_cap if girth.is_infinite else max(1, girth.value - 2)
        if g_used % 2 == 0:
            g_used -= 1
        eps = girth_excess(n, g_used)
        entries.append(
            PipelineClassReport(
                colour=c,
                theta_complement=theta,
                class_odd_girth=girth,
                g_used=g_used,
                epsilon=eps,
                girth_bound_holds=theta.upper <= 2.0 + eps + 3.0 * tol,
            )
        )
        prod_lo *= theta.lower
        prod_hi *= theta.upper
    slack = 4.0 * tol * n
    holds = n <= prod_hi + slack
    return PipelineReport(n, k, entries, (prod_lo, prod_hi), slack, holds)


@dataclass(frozen=True)
class BruteForceResult:
    l_value: int
    extremal: EdgeColouring
    colourings_checked: int
    all_finite: bool


def brute_force_L(k: int) -> BruteForceResult:
    """Exact max-over-colourings of the shortest monochromatic odd cycle.

    Enumerates every k-colouring of K_{2^k + 1}; only k in {1, 2} is allowed
    (3 respectively 1024 colourings).  Each colouring must report a finite
    monochromatic odd cycle, which is asserted along the way.
    """
    if k not in (1, 2):
        raise GraphError(f"brute force supports k in {{1, 2}}, got {k}")
    n = (1 << k) + 1
    pairs = n * (n - 1) // 2
    best_len = -1
    best: EdgeColouring | None = None
    checked = 0
    for code in range(k**pairs):
        digits = []
        value = code
        for _ in range(pairs):
            digits.append(value % k)
            value //= k
        colouring = EdgeColouring(n, k, digits)
        report = shortest_mono_odd_cycle(colouring)
        checked += 1
        if report.length is None:
            raise GraphError(
                f"colouring {code} of K_{n} has no monochromatic odd cycle"
            )
        if report.length > best_len:
            best_len = report.length
            best = colouring
    assert best is not None
    return BruteForceResult(best_len, best, checked, True)


@dataclass(frozen=True)
class CapacityReport:
    """Diagonal independent set in the strong product of class complements."""

    n: int
    k: int
    product_vertices: int
    diagonal: tuple[int, ...]
    diagonal_independent: bool
    alpha: SearchResult | None
    embedding_checked: bool
    embedding_ok: bool | None

    def to_report(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "product_vertices": self.product_vertices,
            "diagonal": list(self.diagonal),
            "diagonal_independent": self.diagonal_independent,
            "alpha": None if self.alpha is None else self.alpha.value,
            "alpha_exact": None if self.alpha is None else self.alpha.optimal,
            "embedding_checked": self.embedding_checked,
            "embedding_ok": self.embedding_ok,
        }


def _strong_power(graph: Graph, k: int, cap: int) -> Graph:
    out = graph
    for _ in range(k - 1):
        out = strong_product(out, graph, cap=cap)
    return out


def capacity_witness(
    colouring: EdgeColouring,
    max_factors: int = 4,
    size_cap: int = 4096,
    alpha_budget: int = 2_000_000,
) -> CapacityReport:
    """Build H = product of complements of the colour classes and audit it.

    Verifies the diagonal {(v, .., v)} is independent in H (so alpha(H) >= n),
    computes alpha(H) exactly when the branch-and-bound budget allows, and,
    when sizes permit, checks H is the induced subgraph of the k-th strong
    power of the complement of the disjoint union of the classes under the
    block-coordinate injection.
    """
    n, k = colouring.n, colouring.k
    if k > max_factors:
        raise GraphError(f"colouring has {k} classes, cap is {max_factors}")
    if n**k > size_cap:
        raise GraphError(f"product would have {n ** k} vertices, cap is {size_cap}")
    complements = [complement(colour_class(colouring, c)) for c in range(k)]
    product = complements[0]
    for g in complements[1:]:
        product = strong_product(product, g, cap=size_cap)
    diag_stride = sum(n**i for i in range(k))
    diagonal = tuple(v * diag_stride for v in range(n))
    independent = all(
        not product.has_edge(a, b) for i, a in enumerate(diagonal) for b in diagonal[i + 1 :]
    )
    alpha = independence_number(product, budget=alpha_budget)
    big_n = n * k
    embedding_checked = big_n**k <= size_cap
    embedding_ok: bool | None = None
    if embedding_checked:
        union_complement = complement(disjoint_union([colour_class(colouring, c) for c in range(k)]))
        power = _strong_power(union_complement, k, cap=size_cap) if k > 1 else union_complement
        image = []
        for idx in range(n**k):
            coords = []
            rest = idx
            for _ in range(k):
                coords.append(rest % n)
                rest //= n
            coords.reverse()
            big = 0
            for pos, v in enumerate(coords):
                big = big * big_n + (v + pos * n)
            image.append(big)
        embedding_ok = True
        total = n**k
        for a in range(total):
            for b in range(a + 1, total):
                if product.has_edge(a, b) != power.has_edge(image[a], image[b]):
                    embedding_ok = False
                    break
            if not embedding_ok:
                break
    return CapacityReport(
        n=n,
        k=k,
        product_vertices=n**k,
        diagonal=diagonal,
        diagonal_independent=independent,
        alpha=alpha,
        embedding_checked=embedding_checked,
        embedding_ok=embedding_ok,
    )


@dataclass(frozen=True)
class LocalSearchResult:
    best: EdgeColouring
    report: MonoOddCycleReport
    iterations_used: int
    restarts: int


def _girth_score(girths: tuple[OddGirth, ...]) -> tuple[int, tuple[int, ...]]:
    """Score maximised by the search: (min length, per-colour vector).

    None (bipartite class) counts as a huge sentinel; the vector is used for
    the plateau tie-break.
    """
    big = 1 << 20
    vec = tuple(big if g.value is None else g.value for g in girths)
    return min(vec), vec


def _class_girths(colouring: EdgeColouring) -> list[OddGirth]:
    return [
        odd_girth(colour_class(colouring, c), witness=False)[0] for c in range(colouring.k)
    ]


def local_search_colouring(
    n: int,
    k: int,
    seed: int,
    iterations: int,
    restart_after: int = 2000,
) -> LocalSearchResult:
    """Hill climbing over single-edge recolourings, maximising the shortest
    monochromatic odd cycle; a fully bipartite colouring returns immediately.

    Plateau moves are accepted when the per-colour girth vector is
    lexicographically smaller, which keeps the walk moving; deterministic for
    a fixed seed.
    """
    if n > 64 or k > 8:
        raise GraphError(f"search is limited to n <= 64 and k <= 8, got n={n}, k={k}")
    rng = random.Random(seed)
    pairs = n * (n - 1) // 2

    def fresh() -> np.ndarray:
        return np.array([rng.randrange(k) for _ in range(pairs)], dtype=np.uint8)

    current = EdgeColouring(n, k, fresh())
    girths = tuple(_class_girths(current))
    cur_min, cur_vec = _girth_score(girths)
    best_col, best_min = current, cur_min
    stale = 0
    restarts = 0
    us, vs = _pair_arrays(n)
    used = 0
    for used in range(1, iterations + 1):
        if cur_min >= 1 << 20:
            best_col, best_min = current, cur_min
            break
        if stale >= restart_after:
            restarts += 1
            stale = 0
            current = EdgeColouring(n, k, fresh())
            girths = tuple(_class_girths(current))
            cur_min, cur_vec = _girth_score(girths)
            if cur_min > best_min:
                best_col, best_min = current, cur_min
            continue
        r = rng.randrange(pairs)
        u, v = int(us[r]), int(vs[r])
        old = current.colour_of(u, v)
        new = rng.randrange(k - 1) if k > 1 else 0
        if k > 1 and new >= old:
            new += 1
        if new == old:
            stale += 1
            continue
        candidate = current.with_colour(u, v, new)
        new_girths = list(girths)
        for c in (old, new):
            new_girths[c] = odd_girth(colour_class(candidate, c), witness=False)[0]
        cand_min, cand_vec = _girth_score(tuple(new_girths))
        if cand_min > cur_min or (cand_min == cur_min and cand_vec < cur_vec):
            improved = cand_min > cur_min
            current, girths = candidate, tuple(new_girths)
            cur_min, cur_vec = cand_min, cand_vec
            if cur_min > best_min:
                best_col, best_min = current, cur_min
            stale = 0 if improved else stale + 1
        else:
            stale += 1
    report = shortest_mono_odd_cycle(best_col)
    return LocalSearchResult(best_col, report, used, restarts)
