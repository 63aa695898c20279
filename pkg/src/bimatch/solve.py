"""Uniform front door over the three solvers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .auction import eps_scaling_auction
from .core import Matching, WeightedBipartiteGraph, matching_weight, validate_matching
from .gk import goldberg_kennedy
from .hungarian import hungarian
from .reduction import BalancedReduction
from .scaling import DEFAULT_ALPHA

ALGORITHMS = ("auction", "gk", "hungarian")


@dataclass(frozen=True)
class SolveResult:
    matching: Matching
    weight: int


def solve(
    graph: WeightedBipartiteGraph,
    algorithm: str = "auction",
    *,
    alpha: Fraction = DEFAULT_ALPHA,
    reduction: str | BalancedReduction = "double",
    deadline: Optional[float] = None,
    precheck: bool = True,
) -> SolveResult:
    """Run one solver; the matching covers every right vertex or an
    :class:`InfeasibleInstanceError` propagates."""
    if algorithm == "auction":
        matching = eps_scaling_auction(
            graph,
            alpha=alpha,
            reduction=reduction,
            deadline=deadline,
            precheck=precheck,
        )
    elif algorithm == "gk":
        matching = goldberg_kennedy(
            graph,
            alpha=alpha,
            reduction=reduction,
            deadline=deadline,
            precheck=precheck,
        )
    elif algorithm == "hungarian":
        matching = hungarian(graph, precheck=precheck, deadline=deadline)
    else:
        raise ValueError(f"no solver named {algorithm!r}")
    return SolveResult(matching=matching, weight=matching_weight(graph, matching))


def verify_solution(
    graph: WeightedBipartiteGraph, matching: Matching
) -> Optional[str]:
    """``None`` when the matching is a valid full cover, else the problem."""
    return validate_matching(graph, matching, require_perfect=True)
