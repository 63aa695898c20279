"""Integer-weighted bipartite instances, matchings, prices and slackness checks.

An instance is a bipartite graph with left vertices ``0..n-1`` (persons),
right vertices ``0..s-1`` (objects) and integer edge weights.  Adjacency is
stored compressed (offsets plus contiguous neighbor/weight arrays) because
the solvers' inner loops are linear scans over one vertex's edges.  Graphs
are immutable after construction; matchings and price vectors are plain
mutable state owned by one solver run at a time.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Optional

Edge = tuple[int, int, int]

# Prices are exact integers on the scaled cost domain; no tolerances anywhere.
PriceVector = list[int]


@dataclass(frozen=True)
class WeightedBipartiteGraph:
    """Immutable instance in compressed adjacency form.

    ``adj_off[u]:adj_off[u+1]`` slices ``adj_v``/``adj_w`` into the neighbor
    list of left vertex ``u``, sorted by right index ascending.  The sort
    order is load-bearing: deterministic tie-breaking in every solver rests
    on it.
    """

    n: int
    s: int
    adj_off: tuple[int, ...]
    adj_v: tuple[int, ...]
    adj_w: tuple[int, ...]
    max_abs_weight: int

    @property
    def m(self) -> int:
        return len(self.adj_v)

    def degree(self, u: int) -> int:
        return self.adj_off[u + 1] - self.adj_off[u]

    def neighbors(self, u: int) -> Iterator[tuple[int, int]]:
        """Yield ``(v, w)`` for every edge at ``u``, in ascending ``v``."""
        lo, hi = self.adj_off[u], self.adj_off[u + 1]
        for i in range(lo, hi):
            yield self.adj_v[i], self.adj_w[i]

    def iter_edges(self) -> Iterator[Edge]:
        """Yield all edges ``(u, v, w)`` sorted by ``(u, v)``."""
        for u in range(self.n):
            for v, w in self.neighbors(u):
                yield u, v, w

    def edge_index(self, u: int, v: int) -> Optional[int]:
        """Position of edge ``uv`` in the adjacency arrays, or ``None``."""
        lo, hi = self.adj_off[u], self.adj_off[u + 1]
        i = bisect_left(self.adj_v, v, lo, hi)
        if i < hi and self.adj_v[i] == v:
            return i
        return None

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_index(u, v) is not None

    def weight(self, u: int, v: int) -> int:
        i = self.edge_index(u, v)
        if i is None:
            raise ValueError(f"({u}, {v}) is not an edge")
        return self.adj_w[i]


def build_graph(n: int, s: int, edges: Iterable[Edge]) -> WeightedBipartiteGraph:
    """Construct a graph, rejecting out-of-range indices and duplicate pairs.

    Empty neighborhoods are legal here; whether every right vertex can be
    covered is a separate question (see :mod:`bimatch.feasibility`).
    """
    if n < 1 or s < 1:
        raise ValueError("need n >= 1 and s >= 1")
    per_u: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, v, w in edges:
        u, v, w = int(u), int(v), int(w)
        if not 0 <= u < n:
            raise ValueError(f"left index {u} out of range [0, {n})")
        if not 0 <= v < s:
            raise ValueError(f"right index {v} out of range [0, {s})")
        per_u[u].append((v, w))
    off = [0] * (n + 1)
    adj_v: list[int] = []
    adj_w: list[int] = []
    w_max = 0
    for u in range(n):
        row = per_u[u]
        row.sort()
        prev = -1
        for v, w in row:
            if v == prev:
                raise ValueError(f"duplicate edge ({u}, {v})")
            prev = v
            adj_v.append(v)
            adj_w.append(w)
            if abs(w) > w_max:
                w_max = abs(w)
        off[u + 1] = len(adj_v)
    return WeightedBipartiteGraph(
        n=n,
        s=s,
        adj_off=tuple(off),
        adj_v=tuple(adj_v),
        adj_w=tuple(adj_w),
        max_abs_weight=w_max,
    )


def density(graph: WeightedBipartiteGraph) -> Fraction:
    """Edge density m / (n * s), as an exact rational in [0, 1]."""
    return Fraction(graph.m, graph.n * graph.s)


class Matching:
    """Partial assignment between left and right vertices.

    ``match_of_v[v]`` and ``match_of_u[u]`` are mutually consistent partner
    indices (``None`` when unmatched); ``size`` counts matched pairs.
    """

    __slots__ = ("match_of_u", "match_of_v", "size")

    def __init__(self, n: int, s: int):
        self.match_of_u: list[Optional[int]] = [None] * n
        self.match_of_v: list[Optional[int]] = [None] * s
        self.size = 0

    def assign(self, u: int, v: int) -> None:
        if self.match_of_u[u] is not None or self.match_of_v[v] is not None:
            raise ValueError(f"cannot assign ({u}, {v}): an endpoint is matched")
        self.match_of_u[u] = v
        self.match_of_v[v] = u
        self.size += 1

    def unassign(self, u: int, v: int) -> None:
        if self.match_of_u[u] != v or self.match_of_v[v] != u:
            raise ValueError(f"({u}, {v}) is not a matched pair")
        self.match_of_u[u] = None
        self.match_of_v[v] = None
        self.size -= 1

    def pairs(self) -> list[tuple[int, int]]:
        """Matched ``(u, v)`` pairs sorted by right index."""
        return [(u, v) for v, u in enumerate(self.match_of_v) if u is not None]

    def copy(self) -> "Matching":
        other = Matching(len(self.match_of_u), len(self.match_of_v))
        other.match_of_u = list(self.match_of_u)
        other.match_of_v = list(self.match_of_v)
        other.size = self.size
        return other

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matching)
            and self.match_of_u == other.match_of_u
            and self.match_of_v == other.match_of_v
        )

    def __repr__(self) -> str:
        return f"Matching({self.pairs()!r})"


def matching_weight(graph: WeightedBipartiteGraph, matching: Matching) -> int:
    """Sum of matched-edge weights (0 for the empty matching)."""
    total = 0
    for u, v in matching.pairs():
        total += graph.weight(u, v)
    return total


def validate_matching(
    graph: WeightedBipartiteGraph,
    matching: Matching,
    require_perfect: bool = False,
) -> Optional[str]:
    """Return ``None`` if valid, else a message naming the first violation.

    "Perfect" follows the one-sided coverage convention: every right vertex
    matched, i.e. ``size == s``.
    """
    if len(matching.match_of_u) != graph.n or len(matching.match_of_v) != graph.s:
        return "matching shape does not fit the graph"
    for v, u in enumerate(matching.match_of_v):
        if u is None:
            continue
        if not 0 <= u < graph.n:
            return f"right vertex {v} matched to out-of-range {u}"
        if matching.match_of_u[u] != v:
            return f"inconsistent pairing at right vertex {v}"
        if not graph.has_edge(u, v):
            return f"({u}, {v}) is not an edge"
    for u, v in enumerate(matching.match_of_u):
        if v is not None and matching.match_of_v[v] != u:
            return f"inconsistent pairing at left vertex {u}"
    n_matched = sum(1 for u in matching.match_of_v if u is not None)
    if n_matched != matching.size:
        return f"size field {matching.size} != matched count {n_matched}"
    if require_perfect:
        for v, u in enumerate(matching.match_of_v):
            if u is None:
                return f"uncovered right vertex {v}"
    return None


def reduced_cost(
    graph: WeightedBipartiteGraph, prices: PriceVector, u: int, v: int
) -> int:
    """w(uv) - p(v); the auction's reduced cost, a.k.a. partial reduced cost."""
    return graph.weight(u, v) - prices[v]


def check_eps_cs(
    graph: WeightedBipartiteGraph,
    prices: PriceVector,
    matching: Matching,
    eps: int,
) -> bool:
    """Epsilon-complementary slackness: every matched edge is within ``eps``
    of the cheapest reduced cost in its person's neighborhood.

    Vacuously true for the empty matching.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    off, adj_v, adj_w = graph.adj_off, graph.adj_v, graph.adj_w
    for u, v in matching.pairs():
        best = None
        matched_rc = None
        for i in range(off[u], off[u + 1]):
            rc = adj_w[i] - prices[adj_v[i]]
            if best is None or rc < best:
                best = rc
            if adj_v[i] == v:
                matched_rc = rc
        assert matched_rc is not None and best is not None
        if matched_rc > best + eps:
            return False
    return True


# Instance text format: line 1 "n s m", then m lines "u v w" (0-based
# indices, ASCII decimal, LF endings). The interchange format of the CLI.


def write_instance(graph: WeightedBipartiteGraph, path: str | Path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"{graph.n} {graph.s} {graph.m}\n")
        for u, v, w in graph.iter_edges():
            fh.write(f"{u} {v} {w}\n")


def read_instance(path: str | Path) -> WeightedBipartiteGraph:
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise ValueError("header must be 'n s m'")
        try:
            n, s, m = (int(tok) for tok in header)
        except ValueError:
            raise ValueError(f"bad header {header!r}") from None
        edges: list[Edge] = []
        for k in range(m):
            parts = fh.readline().split()
            if len(parts) != 3:
                raise ValueError(f"edge line {k + 1} must be 'u v w'")
            try:
                edges.append((int(parts[0]), int(parts[1]), int(parts[2])))
            except ValueError:
                raise ValueError(f"bad edge line {parts!r}") from None
        if fh.readline().strip():
            raise ValueError("trailing content after the declared edges")
    return build_graph(n, s, edges)
