"""Reductions from unbalanced coverage to balanced perfect matching.

The production solvers want a square instance whose perfect matchings
correspond to V-covering matchings of the original.  Two constructions:

``double``
    Mirror the instance: left side ``U + V'``, right side ``V + U'``, the
    original edges, their mirrored copies ``(n + v, s + u)``, and a
    zero-weight bridge ``(u, s + u)`` per original left vertex.  A perfect
    matching picks a covering matching on each copy and bridges the left
    vertices unused by both; its weight is exactly twice the covering
    optimum, and the original-copy half projects back directly.

``pad``
    Append ``n - s`` dummy right vertices connected to every left vertex by
    zero-weight edges.  Cheaper (no weight doubling) but grows ``n * (n-s)``
    edges, so ``double`` is the default for sparse instances.

A balanced input passes through untouched (``identity``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .core import Edge, Matching, WeightedBipartiteGraph, build_graph

ReductionKind = Literal["identity", "double", "pad"]


@dataclass(frozen=True)
class BalancedReduction:
    """A balanced graph plus the recipe to project matchings back."""

    kind: ReductionKind
    graph: WeightedBipartiteGraph
    orig_n: int
    orig_s: int


def _require_reducible(graph: WeightedBipartiteGraph) -> None:
    if graph.s > graph.n:
        raise ValueError(
            f"s = {graph.s} > n = {graph.n}: no covering matching can exist"
        )


def double_balanced(graph: WeightedBipartiteGraph) -> BalancedReduction:
    """Mirror-and-bridge construction; identity when already balanced."""
    _require_reducible(graph)
    n, s = graph.n, graph.s
    if n == s:
        return BalancedReduction("identity", graph, n, s)
    edges: list[Edge] = []
    for u, v, w in graph.iter_edges():
        edges.append((u, v, w))
        edges.append((n + v, s + u, w))
    for u in range(n):
        edges.append((u, s + u, 0))
    big = build_graph(n + s, s + n, edges)
    return BalancedReduction("double", big, n, s)


def pad_balanced(graph: WeightedBipartiteGraph) -> BalancedReduction:
    """Zero-weight dummy columns; identity when already balanced."""
    _require_reducible(graph)
    n, s = graph.n, graph.s
    if n == s:
        return BalancedReduction("identity", graph, n, s)
    edges = list(graph.iter_edges())
    for d in range(n - s):
        for u in range(n):
            edges.append((u, s + d, 0))
    big = build_graph(n, n, edges)
    return BalancedReduction("pad", big, n, s)


def build_reduction(
    graph: WeightedBipartiteGraph, kind: str = "double"
) -> BalancedReduction:
    if kind == "double":
        return double_balanced(graph)
    if kind == "pad":
        return pad_balanced(graph)
    raise ValueError(f"unknown reduction {kind!r}")


def resolve_reduction(
    graph: WeightedBipartiteGraph, reduction: "str | BalancedReduction"
) -> BalancedReduction:
    """Build the named reduction, or validate and pass through a prebuilt one."""
    if isinstance(reduction, BalancedReduction):
        if reduction.orig_n != graph.n or reduction.orig_s != graph.s:
            raise ValueError("supplied reduction was built for another graph")
        return reduction
    return build_reduction(graph, reduction)


def project_matching(
    reduction: BalancedReduction, matching: Matching
) -> Matching:
    """Covering matching on the original graph from a perfect one on the
    balanced graph.

    Requires the input to be perfect; guarantees the output covers every
    original right vertex.
    """
    big = reduction.graph
    if matching.size != big.s:
        raise ValueError(
            f"need a perfect matching on the balanced graph "
            f"(size {matching.size} != {big.s})"
        )
    n, s = reduction.orig_n, reduction.orig_s
    if reduction.kind == "identity":
        return matching.copy()
    out = Matching(n, s)
    for v in range(s):
        u = matching.match_of_v[v]
        assert u is not None
        if not 0 <= u < n:
            raise ValueError(f"right vertex {v} matched outside the original U")
        out.assign(u, v)
    return out
