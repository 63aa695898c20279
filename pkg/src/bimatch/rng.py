"""Deterministic random streams for instance generation.

Counter-based Philox generators keyed by ``(seed, stream)`` give independent,
reproducible streams: graph structure and edge weights never share draws, so
regenerating the same seed with a different weight model yields the identical
edge set.
"""

from __future__ import annotations

import numpy as np

GRAPH_STREAM = 0
WEIGHT_STREAM = 1

_MASK64 = (1 << 64) - 1


def make_rng(seed: int, stream: int) -> np.random.Generator:
    """Generator for one ``(seed, stream)`` pair; same pair, same draws."""
    key = np.array([seed & _MASK64, stream & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
