"""Shared test helpers: seeded random instances small enough to brute-force."""

from __future__ import annotations

import random
from typing import Iterator, Optional

from bimatch.core import Edge, WeightedBipartiteGraph, build_graph
from bimatch.feasibility import is_feasible


def random_graph(
    rng: random.Random,
    n: int,
    s: int,
    density: float = 0.6,
    w_lo: int = 1,
    w_hi: int = 100,
) -> WeightedBipartiteGraph:
    edges: list[Edge] = []
    for u in range(n):
        for v in range(s):
            if rng.random() < density:
                edges.append((u, v, rng.randint(w_lo, w_hi)))
    return build_graph(n, s, edges)


def random_feasible_graphs(
    seed: int,
    count: int,
    max_n: int = 8,
    max_s: Optional[int] = None,
    density: float = 0.6,
    balanced: bool = False,
    w_lo: int = 1,
    w_hi: int = 100,
) -> Iterator[WeightedBipartiteGraph]:
    """Yield ``count`` feasible instances, retrying infeasible draws."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        n = rng.randint(1, max_n)
        if balanced:
            s = n
        else:
            s = rng.randint(1, min(n, max_s) if max_s is not None else n)
        g = random_graph(rng, n, s, density, w_lo, w_hi)
        if not is_feasible(g):
            continue
        produced += 1
        yield g


def complete_graph(
    n: int, s: int, weight_of=lambda u, v: 1
) -> WeightedBipartiteGraph:
    return build_graph(
        n, s, [(u, v, weight_of(u, v)) for u in range(n) for v in range(s)]
    )


# The worked 2x2 reference instance used across the suite: optimum is the
# diagonal {u0v0, u1v1} with weight 2; the other perfect matching weighs 5.
def g0() -> WeightedBipartiteGraph:
    return build_graph(2, 2, [(0, 0, 1), (0, 1, 3), (1, 0, 2), (1, 1, 1)])
