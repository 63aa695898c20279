"""Exact integer cost scaling and the epsilon schedule.

All prices and reduced costs live on a scaled integer domain: weights are
multiplied by ``n + 1`` so that reaching ``eps == 1`` on the scaled instance
certifies optimality of the matching on the original one (the unscaled
violation is below ``1/n``, and distinct matching weights differ by at least
a whole unit).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .core import WeightedBipartiteGraph

DEFAULT_ALPHA = Fraction(5)


def scale_factor(graph: WeightedBipartiteGraph) -> int:
    return graph.n + 1


def scale_graph(graph: WeightedBipartiteGraph) -> WeightedBipartiteGraph:
    """Same structure, every weight multiplied by ``n + 1``."""
    k = scale_factor(graph)
    return WeightedBipartiteGraph(
        n=graph.n,
        s=graph.s,
        adj_off=graph.adj_off,
        adj_v=graph.adj_v,
        adj_w=tuple(w * k for w in graph.adj_w),
        max_abs_weight=graph.max_abs_weight * k,
    )


def parse_alpha(text: str) -> Fraction:
    """Scaling divisor from a string like '5', '7/2' or '3.5'; must be > 1."""
    try:
        alpha = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse scaling factor {text!r}") from None
    if alpha <= 1:
        raise ValueError(f"scaling factor must exceed 1, got {alpha}")
    return alpha


def eps_schedule(start: int, alpha: Fraction = DEFAULT_ALPHA) -> Iterator[int]:
    """Yield the integer eps values 1st phase .. final phase.

    Each phase divides by ``alpha`` and floors, clamped at 1; the final
    yielded value is always exactly 1.  ``start <= 0`` (zero-weight graphs)
    degenerates to the single phase ``[1]``.
    """
    if alpha <= 1:
        raise ValueError("alpha must exceed 1")
    eps = max(1, start)
    while True:
        eps = max(1, eps * alpha.denominator // alpha.numerator)
        yield eps
        if eps == 1:
            return


def initial_eps(scaled: WeightedBipartiteGraph) -> int:
    """Starting eps: the largest absolute scaled weight."""
    return scaled.max_abs_weight


def second_cost_sentinel_gap(max_abs_scaled_weight: int) -> int:
    """Stand-in runner-up gap for single-edge neighborhoods.

    When a person has exactly one object there is no second-smallest reduced
    cost; both solvers substitute ``best + gap`` with this shared gap so
    their traces stay comparable.  Any positive value is correct (the price
    of a sole neighbor is unconstrained by slackness); this one is large
    enough that such objects immediately become unattractive to everyone
    else.
    """
    return 2 * max_abs_scaled_weight + 1
