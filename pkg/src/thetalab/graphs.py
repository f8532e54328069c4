"""Immutable bitset graphs and the combinatorial operations built on them.

Vertices are 0..n-1 and each adjacency row is a Python int used as a bitset,
which keeps complement / union / intersection and whole-row scans cheap at
the few-thousand-vertex scale this package targets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Graph",
    "GraphError",
    "OddGirth",
    "ODD_GIRTH_INFINITE",
    "CycleWitness",
    "SearchResult",
    "build_graph",
    "complement",
    "edge_union",
    "edge_intersection",
    "disjoint_union",
    "strong_product",
    "odd_girth",
    "is_bipartite",
    "independence_number",
    "clique_number",
    "chromatic_number_small",
    "graph_from_name",
    "read_graph_text",
    "write_graph_text",
]

MAX_VERTICES = 1 << 16
STRONG_PRODUCT_CAP = 4096
DEFAULT_SEARCH_BUDGET = 2_000_000


class GraphError(ValueError):
    """Malformed graph construction, format or precondition violation."""


def _bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph on vertex set {0, .., n-1}.

    Instances are immutable; every operation returns a fresh graph.
    """

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, adjacency: Sequence[int]):
        if not 1 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside [1, {MAX_VERTICES}]")
        if len(adjacency) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(adjacency)}")
        mask = (1 << n) - 1
        for v, row in enumerate(adjacency):
            if row & ~mask:
                raise GraphError(f"adjacency row {v} mentions vertices >= {n}")
            if (row >> v) & 1:
                raise GraphError(f"self-loop at vertex {v}")
        for v, row in enumerate(adjacency):
            for u in _bits(row >> (v + 1)):
                u += v + 1
                if not (adjacency[u] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        self.n = n
        self._adj = tuple(adjacency)

    @classmethod
    def _trusted(cls, n: int, adjacency: Sequence[int]) -> "Graph":
        # Fast path for rows built symmetric by construction.
        g = object.__new__(cls)
        g.n = n
        g._adj = tuple(adjacency)
        return g

    def adjacency_bits(self, v: int) -> int:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def neighbours(self, v: int) -> Iterator[int]:
        return _bits(self._adj[v])

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self._adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            for u in _bits(self._adj[v] >> (v + 1)):
                yield (v, u + v + 1)

    def edge_list(self) -> list[tuple[int, int]]:
        return list(self.edges())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


@dataclass(frozen=True)
class OddGirth:
    """Length of the shortest odd cycle; ``value`` is None for bipartite graphs."""

    value: int | None

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def greater_than(self, g: int) -> bool:
        """True when the graph has no odd cycle of length at most ``g``."""
        return self.value is None or self.value > g

    def __repr__(self) -> str:
        return "OddGirth(INFINITE)" if self.value is None else f"OddGirth({self.value})"


ODD_GIRTH_INFINITE = OddGirth(None)


@dataclass(frozen=True)
class CycleWitness:
    """Odd cycle given as a vertex sequence; consecutive pairs (cyclically) are edges."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def validate(self, graph: Graph) -> None:
        verts = self.vertices
        if len(verts) < 3 or len(verts) % 2 == 0:
            raise GraphError(f"witness length {len(verts)} is not an odd cycle length")
        if len(set(verts)) != len(verts):
            raise GraphError("witness repeats a vertex")
        for i, v in enumerate(verts):
            u = verts[(i + 1) % len(verts)]
            if not graph.has_edge(v, u):
                raise GraphError(f"witness pair ({v}, {u}) is not an edge")


@dataclass(frozen=True)
class SearchResult:
    """Exact-search outcome; ``optimal`` is False when the node budget ran out."""

    value: int
    optimal: bool
    nodes: int


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph with exactly the given edges; duplicates collapse silently."""
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside [1, {MAX_VERTICES}]")
    adj = [0] * n
    for idx, (u, v) in enumerate(edges):
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge #{idx} ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"edge #{idx} ({u}, {v}) is a self-loop")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph._trusted(n, adj)


def complement(graph: Graph) -> Graph:
    n = graph.n
    mask = (1 << n) - 1
    adj = [(~graph.adjacency_bits(v)) & mask & ~(1 << v) for v in range(n)]
    return Graph._trusted(n, adj)


def _require_same_order(g1: Graph, g2: Graph) -> None:
    if g1.n != g2.n:
        raise GraphError(f"vertex counts differ: {g1.n} vs {g2.n}")


def edge_union(g1: Graph, g2: Graph) -> Graph:
    _require_same_order(g1, g2)
    adj = [g1.adjacency_bits(v) | g2.adjacency_bits(v) for v in range(g1.n)]
    return Graph._trusted(g1.n, adj)


def edge_intersection(g1: Graph, g2: Graph) -> Graph:
    _require_same_order(g1, g2)
    adj = [g1.adjacency_bits(v) & g2.adjacency_bits(v) for v in range(g1.n)]
    return Graph._trusted(g1.n, adj)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Block-diagonal union; vertex blocks keep the input order."""
    if not graphs:
        raise GraphError("disjoint_union needs at least one graph")
    total = sum(g.n for g in graphs)
    adj = []
    offset = 0
    for g in graphs:
        adj.extend(g.adjacency_bits(v) << offset for v in range(g.n))
        offset += g.n
    return Graph._trusted(total, adj)


def strong_product(g1: Graph, g2: Graph, cap: int = STRONG_PRODUCT_CAP) -> Graph:
    """Strong product; pair (u, v) maps to index u * g2.n + v.

    Distinct pairs are adjacent iff each coordinate is equal or adjacent.
    """
    n1, n2 = g1.n, g2.n
    if n1 * n2 > cap:
        raise GraphError(f"product size {n1 * n2} exceeds cap {cap}")
    closed2 = [g2.adjacency_bits(v) | (1 << v) for v in range(n2)]
    adj = []
    for u in range(n1):
        closed1 = g1.adjacency_bits(u) | (1 << u)
        for v in range(n2):
            row = 0
            block = closed2[v]
            for u2 in _bits(closed1):
                row |= block << (u2 * n2)
            row &= ~(1 << (u * n2 + v))
            adj.append(row)
    return Graph._trusted(n1 * n2, adj)


def _two_colouring(graph: Graph) -> tuple[int, int] | None:
    """Bitset BFS 2-colouring; returns the colour class masks or None."""
    n = graph.n
    seen = 0
    side = [0, 0]
    full = (1 << n) - 1
    while seen != full:
        root = ((~seen) & full).bit_length() - 1
        frontier = 1 << root
        parity = 0
        while frontier:
            side[parity] |= frontier
            seen |= frontier
            nxt = 0
            for v in _bits(frontier):
                nxt |= graph.adjacency_bits(v)
            frontier = nxt & ~seen
            parity ^= 1
    for v in range(n):
        row = graph.adjacency_bits(v)
        if (side[0] >> v) & 1:
            if row & side[0]:
                return None
        elif row & side[1]:
            return None
    return side[0], side[1]


def is_bipartite(graph: Graph) -> bool:
    return _two_colouring(graph) is not None


def _odd_closed_walk_length(graph: Graph, root: int, cap: int | None) -> int | None:
    """Length of the shortest odd closed walk through ``root`` (< cap), or None.

    Layered BFS on the bipartite double cover: the frontier at depth d holds
    exactly the vertices reachable at parity d % 2.
    """
    visited = [1 << root, 0]
    frontier = 1 << root
    depth = 0
    while frontier:
        depth += 1
        if cap is not None and depth >= cap:
            return None
        parity = depth & 1
        nxt = 0
        for v in _bits(frontier):
            nxt |= graph.adjacency_bits(v)
        if parity and (nxt >> root) & 1:
            return depth
        frontier = nxt & ~visited[parity]
        visited[parity] |= frontier
    return None


def _reconstruct_odd_cycle(graph: Graph, root: int, length: int) -> CycleWitness:
    """Parent-tracking BFS over (vertex, parity) states for the witness cycle.

    Neighbours are scanned in increasing index, so the first parent found is
    the lowest-index one and the witness is deterministic.
    """
    start = (root, 0)
    parents: dict[tuple[int, int], tuple[int, int]] = {start: start}
    queue = deque([start])
    goal = (root, 1)
    while queue:
        state = queue.popleft()
        if state == goal:
            break
        v, parity = state
        for u in graph.neighbours(v):
            nxt = (u, parity ^ 1)
            if nxt not in parents:
                parents[nxt] = state
                queue.append(nxt)
    if goal not in parents:
        raise GraphError("internal error: witness target unreachable")
    path = [goal]
    while path[-1] != start:
        path.append(parents[path[-1]])
    verts = tuple(v for v, _parity in reversed(path))
    if len(verts) != length + 1:
        raise GraphError("internal error: witness length mismatch")
    witness = CycleWitness(verts[:-1])
    witness.validate(graph)
    return witness


def odd_girth(graph: Graph, witness: bool = True) -> tuple[OddGirth, CycleWitness | None]:
    """Shortest odd cycle length via double-cover BFS, with optional witness.

    Bipartite graphs short-circuit to INFINITE after a single 2-colouring
    pass.  The minimum over roots of the shortest odd closed walk equals the
    odd girth, and at the attaining root the walk is a simple cycle.
    """
    if _two_colouring(graph) is not None:
        return ODD_GIRTH_INFINITE, None
    best: int | None = None
    best_root = -1
    for root in range(graph.n):
        found = _odd_closed_walk_length(graph, root, best)
        if found is not None and (best is None or found < best):
            best, best_root = found, root
            if best == 3:
                break
    assert best is not None  # non-bipartite graphs contain an odd cycle
    girth = OddGirth(best)
    if not witness:
        return girth, None
    return girth, _reconstruct_odd_cycle(graph, best_root, best)


class _BudgetExhausted(Exception):
    pass


class _CliqueSearch:
    """Branch-and-bound maximum clique with greedy-colouring bounds.

    Vertices are relabelled by decreasing degree up front; the greedy colour
    classes are rebuilt at every node and give the pruning bound.
    """

    def __init__(self, graph: Graph, budget: int):
        order = sorted(range(graph.n), key=lambda v: (-graph.degree(v), v))
        position = {v: i for i, v in enumerate(order)}
        self.n = graph.n
        self.adj = [0] * graph.n
        for v in range(graph.n):
            row = 0
            for u in graph.neighbours(v):
                row |= 1 << position[u]
            self.adj[position[v]] = row
        self.budget = budget
        self.nodes = 0
        self.best = 0

    def run(self) -> SearchResult:
        full = (1 << self.n) - 1
        try:
            self._expand(full, 0)
            return SearchResult(self.best, True, self.nodes)
        except _BudgetExhausted:
            return SearchResult(self.best, False, self.nodes)

    def _expand(self, candidates: int, size: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted
        order: list[tuple[int, int]] = []
        colour = 0
        remaining = candidates
        while remaining:
            colour += 1
            available = remaining
            while available:
                v = (available & -available).bit_length() - 1
                available &= ~self.adj[v] & ~(1 << v)
                remaining &= ~(1 << v)
                order.append((v, colour))
        for v, bound in reversed(order):
            if size + bound <= self.best:
                return
            self.best = max(self.best, size + 1)
            sub = candidates & self.adj[v]
            if sub:
                self._expand(sub, size + 1)
            candidates &= ~(1 << v)


def clique_number(graph: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> SearchResult:
    return _CliqueSearch(graph, budget).run()


def independence_number(graph: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> SearchResult:
    return _CliqueSearch(complement(graph), budget).run()


def chromatic_number_small(graph: Graph) -> int:
    """Exact chromatic number by iterative-deepening colouring search; n <= 12."""
    n = graph.n
    if n > 12:
        raise GraphError(f"chromatic_number_small is limited to n <= 12, got {n}")
    if graph.num_edges == 0:
        return 1
    order = sorted(range(n), key=lambda v: (-graph.degree(v), v))
    adj = [graph.adjacency_bits(v) for v in range(n)]

    def colourable(k: int) -> bool:
        colours = [-1] * n

        def place(idx: int) -> bool:
            if idx == len(order):
                return True
            v = order[idx]
            used_next = max(colours[order[i]] for i in range(idx)) + 1 if idx else 0
            for c in range(min(k, used_next + 1)):
                conflict = False
                for u in _bits(adj[v]):
                    if colours[u] == c:
                        conflict = True
                        break
                if not conflict:
                    colours[v] = c
                    if place(idx + 1):
                        return True
                    colours[v] = -1
            return False

        return place(0)

    k = 2
    while not colourable(k):
        k += 1
    return k


def _petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return build_graph(10, edges)


def graph_from_name(name: str) -> Graph:
    """Named generators: complete:n, cycle:n, empty:n, petersen, hypercube:k."""
    kind, _, arg = name.strip().partition(":")
    kind = kind.lower()
    if kind == "petersen":
        return _petersen()
    if kind not in {"complete", "cycle", "empty", "hypercube"}:
        raise GraphError(f"unknown generator {name!r}")
    try:
        value = int(arg)
    except ValueError:
        raise GraphError(f"generator {name!r} needs an integer parameter") from None
    if kind == "complete":
        return build_graph(value, [(i, j) for i in range(value) for j in range(i + 1, value)])
    if kind == "empty":
        return build_graph(value, [])
    if kind == "cycle":
        if value < 3:
            raise GraphError("cycle generator needs n >= 3")
        return build_graph(value, [(i, (i + 1) % value) for i in range(value)])
    if not 1 <= value <= 16:
        raise GraphError("hypercube generator needs 1 <= k <= 16")
    n = 1 << value
    edges = [(u, u ^ (1 << b)) for u in range(n) for b in range(value) if u < u ^ (1 << b)]
    return build_graph(n, edges)


def write_graph_text(graph: Graph) -> str:
    """Text format: "p <n> <m>" header then one "e <u> <v>" line per edge."""
    lines = [f"p {graph.n} {graph.num_edges}"]
    lines.extend(f"e {u} {v}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def read_graph_text(text: str) -> Graph:
    n = None
    declared = 0
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphError(f"line {lineno}: duplicate header")
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: header must be 'p <n> <m>'")
            n, declared = int(parts[1]), int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise GraphError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: edge line must be 'e <u> <v>'")
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise GraphError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise GraphError("missing 'p <n> <m>' header")
    graph = build_graph(n, edges)
    if graph.num_edges != declared:
        raise GraphError(f"header declares {declared} edges, found {graph.num_edges}")
    return graph
