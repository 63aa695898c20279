"""Exhaustive reference solver for tiny instances.

Independent of the price/flow machinery on purpose: it enumerates
assignments directly, so its answers can arbitrate between the production
solvers.  Exponential in ``s``; refuses anything bigger than ``s == 9``.
"""

from __future__ import annotations

from typing import Optional

from .core import Matching, WeightedBipartiteGraph

MAX_ORACLE_S = 9


def brute_force_optimum(
    graph: WeightedBipartiteGraph,
) -> Optional[tuple[Matching, int]]:
    """Minimum-weight matching covering every right vertex, or ``None``.

    ``None`` means no covering matching exists.  Ties resolve to the
    lexicographically smallest assignment vector ``(M(v0), M(v1), ...)``,
    which makes the result reproducible.
    """
    n, s = graph.n, graph.s
    if s > MAX_ORACLE_S:
        raise ValueError(f"brute force capped at s <= {MAX_ORACLE_S}, got {s}")

    # Right-side adjacency, candidates in ascending u for the tie rule.
    cand: list[list[tuple[int, int]]] = [[] for _ in range(s)]
    for u, v, w in graph.iter_edges():
        cand[v].append((u, w))
    if any(not row for row in cand):
        return None

    # Admissible lower bound for pruning: each remaining v costs at least
    # its cheapest incident edge (valid for negative weights too).
    min_in = [min(w for _, w in row) for row in cand]
    suffix = [0] * (s + 1)
    for v in range(s - 1, -1, -1):
        suffix[v] = suffix[v + 1] + min_in[v]

    used = [False] * n
    chosen: list[int] = [-1] * s
    best_cost: Optional[int] = None
    best_choice: Optional[list[int]] = None

    def walk(v: int, cost: int) -> None:
        nonlocal best_cost, best_choice
        if best_cost is not None and cost + suffix[v] >= best_cost:
            return
        if v == s:
            # Strict inequality above makes the first minimum found stick,
            # and ascending-u iteration makes that the lexicographic min.
            best_cost = cost
            best_choice = chosen.copy()
            return
        for u, w in cand[v]:
            if used[u]:
                continue
            used[u] = True
            chosen[v] = u
            walk(v + 1, cost + w)
            used[u] = False
        chosen[v] = -1

    walk(0, 0)
    if best_choice is None:
        return None
    matching = Matching(n, s)
    for v, u in enumerate(best_choice):
        matching.assign(u, v)
    assert best_cost is not None
    return matching, best_cost
