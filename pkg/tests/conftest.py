"""Shared graph corpus and independent oracles used across the suite."""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from thetalab.graphs import Graph, build_graph, graph_from_name


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_graph(n, edges)


def bipartite_family() -> list[Graph]:
    graphs = [graph_from_name(f"cycle:{n}") for n in range(4, 17, 2)]
    graphs += [graph_from_name(f"hypercube:{k}") for k in (2, 3, 4)]
    for a, b in [(1, 5), (2, 3), (3, 3), (2, 4)]:
        graphs.append(
            build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
        )
    graphs.append(build_graph(6, [(i, i + 1) for i in range(5)]))  # path
    graphs.append(graph_from_name("empty:6"))
    return graphs


def odd_cycles(max_g: int = 25) -> list[Graph]:
    return [graph_from_name(f"cycle:{g}") for g in range(3, max_g + 1, 2)]


def corpus(seed: int = 20240901, random_count: int = 150, max_n: int = 24) -> list[Graph]:
    """Odd cycles, bipartite families and seeded random graphs; >= 200 graphs."""
    rng = random.Random(seed)
    graphs = odd_cycles() + bipartite_family()
    for _ in range(random_count):
        n = rng.randint(4, max_n)
        p = rng.uniform(0.15, 0.85)
        graphs.append(random_graph(rng, n, p))
    return graphs


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def odd_girth_by_subsets(graph: Graph) -> int | None:
    """Smallest odd |S| whose induced subgraph is a single cycle.

    A shortest odd cycle is chordless, so scanning induced cycles finds it.
    Exponential; intended for n <= 9.
    """
    n = graph.n
    best = None
    for size in range(3, n + 1, 2):
        if best is not None:
            break
        for subset in itertools.combinations(range(n), size):
            inside = 0
            for v in subset:
                inside |= 1 << v
            degs = [bin(graph.adjacency_bits(v) & inside).count("1") for v in subset]
            if any(d != 2 for d in degs):
                continue
            # 2-regular induced subgraph: connected <=> a single cycle
            start = subset[0]
            seen = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for u in subset:
                    if u not in seen and graph.has_edge(v, u):
                        seen.add(u)
                        stack.append(u)
            if len(seen) == size:
                best = size
                break
    return best


def odd_girth_by_walks(graph: Graph) -> int | None:
    """Smallest odd l with trace(A^l) > 0; independent of the BFS route."""
    n = graph.n
    a = np.zeros((n, n), dtype=np.int64)
    for u, v in graph.edges():
        a[u, v] = a[v, u] = 1
    power = np.eye(n, dtype=np.int64)
    for length in range(1, n + 1):
        power = power @ a
        if length % 2 == 1 and np.trace(power) > 0:
            return length
    return None


def alpha_by_subsets(graph: Graph) -> int:
    """Maximum independent set size by scanning all 2^n subsets; n <= 20-ish."""
    n = graph.n
    best = 0
    for mask in range(1 << n):
        if mask.bit_count() <= best:
            continue
        ok = True
        bits = mask
        while bits:
            low = bits & -bits
            v = low.bit_length() - 1
            bits ^= low
            if graph.adjacency_bits(v) & mask:
                ok = False
                break
        if ok:
            best = mask.bit_count()
    return best


@pytest.fixture(scope="session")
def small_corpus() -> list[Graph]:
    return [g for g in corpus() if g.n <= 10]
